#include "bbm/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbm {

namespace {

SignClass classify(const std::vector<double>& c) {
    // Sampled on [-10, 10]; for the low-degree polynomials used here this is decisive.
    bool pos = false;
    bool neg = false;
    constexpr int kSamples = 4001;
    for (int i = 0; i < kSamples; ++i) {
        const double u = -10.0 + 20.0 * i / (kSamples - 1);
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * u + c[k];
        pos |= v > 1e-12;
        neg |= v < -1e-12;
    }
    if (pos && neg) return SignClass::SignChanging;
    return neg ? SignClass::NonPositive : SignClass::NonNegative;
}

}  // namespace

std::string to_string(SignClass c) {
    switch (c) {
    case SignClass::NonNegative: return "non-negative";
    case SignClass::NonPositive: return "non-positive";
    case SignClass::SignChanging: return "sign-changing";
    }
    return "unknown";
}

Nonlinearity::Nonlinearity(std::string name, std::vector<double> coefficients)
    : name_(std::move(name)), coeffs_(std::move(coefficients)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) throw std::invalid_argument("nonlinearity needs at least one coefficient");
    if (coeffs_[0] != 0.0) throw std::invalid_argument("nonlinearity must satisfy f(0) = 0 (c0 = 0)");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw std::invalid_argument("nonlinearity coefficients must be finite");

    const std::size_t d = coeffs_.size() - 1;
    prime_.assign(std::max<std::size_t>(d, 1), 0.0);
    for (std::size_t i = 1; i <= d; ++i) prime_[i - 1] = static_cast<double>(i) * coeffs_[i];
    // F_anti = sum c_i u^{i+1}/(i+1); h_anti = sum i c_i u^{i+1}/(i+1).
    anti_f_.assign(d + 2, 0.0);
    anti_h_.assign(d + 2, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
        anti_f_[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
        anti_h_[i + 1] = static_cast<double>(i) * coeffs_[i] / static_cast<double>(i + 1);
    }
    sign_class_ = classify(coeffs_);
}

Nonlinearity Nonlinearity::builtin(const std::string& name) {
    if (name == "bbm") return Nonlinearity(name, {0.0, 1.0, 0.5});
    if (name == "linear") return Nonlinearity(name, {0.0, 1.0});
    if (name == "quadratic") return Nonlinearity(name, {0.0, 0.0, 1.0});
    if (name == "quartic") return Nonlinearity(name, {0.0, 0.0, 0.0, 0.0, 1.0});
    throw std::invalid_argument("unknown nonlinearity '" + name + "'");
}

Nonlinearity Nonlinearity::polynomial(std::vector<double> coefficients) {
    return Nonlinearity("polynomial", std::move(coefficients));
}

double Nonlinearity::horner(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * u + c[k];
    return v;
}

Field Nonlinearity::apply(const Field& u) const {
    Field out = u;
    for (double& v : out.values()) v = f(v);
    return out;
}

HypothesisReport check_ucp_hypotheses(const Nonlinearity& f, double lo, double hi,
                                            std::size_t n_samples) {
    if (!(lo <= 0.0 && 0.0 <= hi && lo < hi))
        throw std::invalid_argument("hypothesis range must be an interval containing 0");
    if (n_samples < 100) throw std::invalid_argument("need at least 100 samples");

    HypothesisReport r;
    bool pos = false;
    bool neg = false;
    double prev_x = lo;
    double prev_v = f.f(lo);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        const double v = f.f(x);
        pos |= v > 0.0;
        neg |= v < 0.0;
        const bool near_zero = std::abs(v) < 1e-12 && std::abs(x) > 1e-6;
        // A strict sign flip between samples brackets a root; it is extra unless 0 is inside.
        const bool bracketed = (prev_v > 0.0 && v < 0.0) || (prev_v < 0.0 && v > 0.0);
        const bool brackets_origin = prev_x <= 0.0 && 0.0 <= x;
        if (!r.extra_zero_observed && (near_zero || (bracketed && !brackets_origin))) {
            r.extra_zero_observed = true;
            r.extra_zero_at = near_zero ? x : 0.5 * (prev_x + x);
        }
        prev_x = x;
        prev_v = v;
    }
    r.sign_change_observed = pos && neg;
    switch (f.sign_class()) {
    case SignClass::NonNegative: r.declared_class_consistent = !neg; break;
    case SignClass::NonPositive: r.declared_class_consistent = !pos; break;
    case SignClass::SignChanging: r.declared_class_consistent = true; break;
    }
    return r;
}

double lipschitz_estimate(const Nonlinearity& f, double radius, std::size_t n_samples) {
    if (!(radius > 0.0)) throw std::invalid_argument("Lipschitz radius must be positive");
    n_samples = std::max<std::size_t>(n_samples, 2);
    double m = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        m = std::max(m, std::abs(f.f_prime(x)));
    }
    return m;
}

}  // namespace bbm
