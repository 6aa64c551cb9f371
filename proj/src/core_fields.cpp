#include "bbm/core_fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

namespace bbm {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on new arrays is.
struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

    PlanPair get(std::size_t n) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(n); it != plans_.end()) return it->second;
        const int ni = static_cast<int>(n);
        double* real = fftw_alloc_real(n);
        fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        PlanPair p{fftw_plan_dft_r2c_1d(ni, real, cplx, flags),
                   fftw_plan_dft_c2r_1d(ni, cplx, real, flags)};
        fftw_free(real);
        fftw_free(cplx);
        plans_.emplace(n, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

Domain make_domain(DomainKind kind, double length, std::size_t n_points) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("domain length must be positive and finite");
    if (n_points < Domain::kMinPoints)
        throw std::invalid_argument("domain needs at least " + std::to_string(Domain::kMinPoints) +
                                    " points, got " + std::to_string(n_points));
    if (n_points % 2 != 0) throw std::invalid_argument("domain n_points must be even");
    const double period = kind == DomainKind::Circle ? length : 2.0 * length;
    return Domain(kind, period, n_points);
}

std::vector<double> Domain::grid() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = point(j);
    return x;
}

double Domain::wavenumber(long k) const {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / period_;
}

Field::Field(Domain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.n_points())
        throw std::invalid_argument("field size does not match domain");
}

Field Field::zeros(const Domain& domain) {
    return Field(domain, std::vector<double>(domain.n_points(), 0.0));
}

Field Field::sample(const Domain& domain, const std::function<double(double)>& fn) {
    std::vector<double> v(domain.n_points());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(domain.point(j));
    return Field(domain, std::move(v));
}

Field& Field::operator+=(const Field& other) {
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Field hadamard(const Field& a, const Field& b) {
    Field out = a;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= b[j];
    return out;
}

Field axpy(const Field& a, double s, const Field& b) {
    Field out = a;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += s * b[j];
    return out;
}

SpectralField::SpectralField(Domain domain, std::vector<std::complex<double>> half)
    : domain_(std::move(domain)), half_(std::move(half)) {
    if (half_.size() != domain_.n_points() / 2 + 1)
        throw std::invalid_argument("spectral field size does not match domain");
}

std::complex<double> SpectralField::at(long k) const {
    const long nyq = static_cast<long>(half_.size()) - 1;
    if (k > nyq || k < -nyq) return {0.0, 0.0};
    return k >= 0 ? half_[static_cast<std::size_t>(k)] : std::conj(half_[static_cast<std::size_t>(-k)]);
}

SpectralField to_spectral(const Field& field) {
    const std::size_t n = field.size();
    auto plan = plan_cache().get(n);
    std::vector<double> in(field.values().begin(), field.values().end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(plan.forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : out) c *= scale;
    return SpectralField(field.domain(), std::move(out));
}

Field from_spectral(const SpectralField& sf) {
    const std::size_t n = sf.domain().n_points();
    auto plan = plan_cache().get(n);
    // c2r destroys its input.
    std::vector<std::complex<double>> in(sf.half_spectrum().begin(), sf.half_spectrum().end());
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plan.backward, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    return Field(sf.domain(), std::move(out));
}

Field apply_multiplier(const Field& field, const std::function<std::complex<double>(double)>& m,
                       bool odd) {
    SpectralField sf = to_spectral(field);
    auto half = sf.half_spectrum();
    const std::size_t nyq = half.size() - 1;
    for (std::size_t k = 0; k < half.size(); ++k)
        half[k] *= m(field.domain().wavenumber(static_cast<long>(k)));
    if (odd) half[nyq] = 0.0;
    return from_spectral(sf);
}

Field derivative(const Field& field, int order) {
    if (order == 1)
        return apply_multiplier(field, [](double k) { return std::complex<double>(0.0, k); }, true);
    if (order == 2) return apply_multiplier(field, [](double k) { return std::complex<double>(-k * k, 0.0); });
    throw std::invalid_argument("derivative order must be 1 or 2, got " + std::to_string(order));
}

double integrate(const Field& field) {
    double sum = 0.0;
    for (double v : field.values()) sum += v;
    return field.domain().dx() * sum;
}

namespace {

// Real trigonometric interpolant: c0 + 2 Re sum_{0<k<N/2} c_k e^{i k' s} + c_{N/2} cos(k' s).
template <typename ModeFn>
double sum_modes(const SpectralField& sf, ModeFn&& mode) {
    auto half = sf.half_spectrum();
    const std::size_t nyq = half.size() - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k <= nyq; ++k) {
        const double weight = (k == 0 || k == nyq) ? 1.0 : 2.0;
        acc += weight * mode(k, half[k]);
    }
    return acc;
}

}  // namespace

double spectral_eval(const SpectralField& sf, double x) {
    const Domain& d = sf.domain();
    const double s = x - d.left();
    const std::size_t nyq = sf.n_modes() - 1;
    return sum_modes(sf, [&](std::size_t k, std::complex<double> c) {
        const double kappa = d.wavenumber(static_cast<long>(k));
        if (k == nyq) return c.real() * std::cos(kappa * s);
        return (c * std::polar(1.0, kappa * s)).real();
    });
}

double spectral_integral(const SpectralField& sf, double a, double b) {
    const Domain& d = sf.domain();
    const double sa = a - d.left();
    const double sb = b - d.left();
    const std::size_t nyq = sf.n_modes() - 1;
    return sum_modes(sf, [&](std::size_t k, std::complex<double> c) {
        if (k == 0) return c.real() * (b - a);
        const double kappa = d.wavenumber(static_cast<long>(k));
        if (k == nyq) return c.real() * (std::sin(kappa * sb) - std::sin(kappa * sa)) / kappa;
        const std::complex<double> anti =
            (std::polar(1.0, kappa * sb) - std::polar(1.0, kappa * sa)) / std::complex<double>(0.0, kappa);
        return (c * anti).real();
    });
}

NormKind NormKind::hs(double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("Sobolev index must be nonnegative");
    return {Tag::Hs, s};
}

double norm(const Field& field, NormKind kind) {
    switch (kind.tag) {
    case NormKind::Tag::Linf:
        return field.max_abs();
    case NormKind::Tag::L2:
        kind.s = 0.0;
        [[fallthrough]];
    case NormKind::Tag::Hs: {
        const SpectralField sf = to_spectral(field);
        const Domain& d = field.domain();
        const double sq = sum_modes(sf, [&](std::size_t k, std::complex<double> c) {
            const double kappa = d.wavenumber(static_cast<long>(k));
            return std::pow(1.0 + kappa * kappa, kind.s) * std::norm(c);
        });
        return std::sqrt(d.period() * sq);
    }
    }
    return 0.0;
}

double top_third_energy_fraction(const Field& field) {
    const SpectralField sf = to_spectral(field);
    auto half = sf.half_spectrum();
    const std::size_t cut = 2 * (half.size() - 1) / 3;
    double total = 0.0;
    double top = 0.0;
    for (std::size_t k = 0; k < half.size(); ++k) {
        const double e = std::norm(half[k]);
        total += e;
        if (k > cut) top += e;
    }
    return total > 0.0 ? top / total : 0.0;
}

void write_snapshot_csv(std::ostream& os, const Field& field, const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    os << "x,u\n" << std::setprecision(17);
    for (std::size_t j = 0; j < field.size(); ++j)
        os << field.domain().point(j) << ',' << field[j] << '\n';
}

}  // namespace bbm
