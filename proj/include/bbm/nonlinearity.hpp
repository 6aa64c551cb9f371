#pragma once

#include "bbm/core_fields.hpp"

#include <string>
#include <vector>

namespace bbm {

enum class SignClass { NonNegative, NonPositive, SignChanging };

std::string to_string(SignClass c);

/// Polynomial nonlinearity f(u) = sum_i c_i u^i with c_0 = 0. The antiderivatives are
/// exact: F_anti' = f, h_anti' = u f', both normalized to vanish at 0.
class Nonlinearity {
public:
    Nonlinearity(std::string name, std::vector<double> coefficients);

    /// bbm (u + u^2/2), linear (u), quadratic (u^2), quartic (u^4).
    static Nonlinearity builtin(const std::string& name);
    static Nonlinearity polynomial(std::vector<double> coefficients);

    const std::string& name() const { return name_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    SignClass sign_class() const { return sign_class_; }

    double f(double u) const { return horner(coeffs_, u); }
    double f_prime(double u) const { return horner(prime_, u); }
    double F_anti(double u) const { return horner(anti_f_, u); }
    double h_anti(double u) const { return horner(anti_h_, u); }

    Field apply(const Field& u) const;

private:
    static double horner(const std::vector<double>& c, double u);

    std::string name_;
    std::vector<double> coeffs_;
    std::vector<double> prime_;
    std::vector<double> anti_f_;
    std::vector<double> anti_h_;
    SignClass sign_class_;
};

struct HypothesisReport {
    bool sign_change_observed = false;
    bool extra_zero_observed = false;
    bool declared_class_consistent = true;
    double extra_zero_at = 0.0;  // meaningful when extra_zero_observed

    /// f does not change sign and vanishes only at 0.
    bool passes() const { return !sign_change_observed && !extra_zero_observed; }
};

/// Samples f on [lo, hi] (which must contain 0) and checks the sign-definiteness and
/// single-zero hypotheses of the unique continuation theorem.
HypothesisReport check_ucp_hypotheses(const Nonlinearity& f, double lo, double hi,
                                            std::size_t n_samples);

/// max |f'| over [-radius, radius] by sampling (endpoints included).
double lipschitz_estimate(const Nonlinearity& f, double radius, std::size_t n_samples);

}  // namespace bbm
