#pragma once

#include "bbm/core_fields.hpp"

#include <array>
#include <vector>

namespace bbm {

class Nonlinearity;

/// Green's function of (1 - d^2/dx^2): exp(-|x|)/2 on the line, and on the unit circle
/// cosh(x - floor(x) - 1/2) / (2 sinh(1/2)).
double green_eval(double x, DomainKind kind);
/// Periodic Green's function for a circle of arbitrary length.
double green_periodic(double x, double period);

enum class KernelMethod { SpectralMultiplier, DirectConvolution, ExpFilter };

/// How Lambda^{-2} = (1 - d^2/dx^2)^{-1} is realized on a domain. Immutable once built.
class KernelSpec {
public:
    KernelSpec(Domain domain, KernelMethod method);

    const Domain& domain() const { return domain_; }
    KernelMethod method() const { return method_; }

    /// Per-interval weights of the exponential filter: the integral of exp(-(h - s))
    /// (causal) or exp(-s) (anticausal) over one cell against the Lagrange basis of an
    /// 8-point stencil, for each position of the cell inside the stencil.
    static constexpr std::size_t kStencil = 8;
    using StencilWeights = std::array<double, kStencil>;
    struct FilterWeights {
        std::array<StencilWeights, kStencil - 1> causal;
        std::array<StencilWeights, kStencil - 1> anticausal;
    };

private:
    friend Field lambda_inv2(const Field&, const KernelSpec&);

    Field apply_direct(const Field& field) const;
    Field apply_exp_filter(const Field& field) const;

    Domain domain_;
    KernelMethod method_;
    std::vector<double> kernel_samples_;            // DirectConvolution
    FilterWeights filter_{};                        // ExpFilter
};

Field lambda_inv2(const Field& field, const KernelSpec& spec);
Field dx_lambda_inv2(const Field& field, const KernelSpec& spec);

/// Time derivative of u under u_t = -d/dx Lambda^{-2} f(u).
Field rhs(const Field& u, const Nonlinearity& f, const KernelSpec& spec);

struct IdentityResiduals {
    double inverse;  // ||(1 - d^2) Lambda^{-2} phi - phi||_inf
    double second;   // ||d^2 Lambda^{-2} phi - (Lambda^{-2} phi - phi)||_inf
};

IdentityResiduals identity_residuals(const Field& phi, const KernelSpec& spec);

}  // namespace bbm
