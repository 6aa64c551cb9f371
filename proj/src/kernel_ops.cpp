#include "bbm/kernel_ops.hpp"

#include "bbm/nonlinearity.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <stdexcept>

namespace bbm {

double green_periodic(double x, double period) {
    const double s = x / period;
    const double frac = (s - std::floor(s)) * period;
    return std::cosh(frac - 0.5 * period) / (2.0 * std::sinh(0.5 * period));
}

double green_eval(double x, DomainKind kind) {
    if (kind == DomainKind::Line) return 0.5 * std::exp(-std::abs(x));
    return std::cosh(x - std::floor(x) - 0.5) / (2.0 * std::sinh(0.5));
}

namespace {

constexpr std::size_t kS = KernelSpec::kStencil;

// Lagrange basis polynomial i on nodes 0, 1, ..., kS-1, evaluated at t.
double lagrange(std::size_t i, double t) {
    double v = 1.0;
    for (std::size_t m = 0; m < kS; ++m)
        if (m != i) v *= (t - static_cast<double>(m)) / (static_cast<double>(i) - static_cast<double>(m));
    return v;
}

KernelSpec::FilterWeights filter_weights(double h) {
    using Gauss = boost::math::quadrature::gauss<double, 20>;
    KernelSpec::FilterWeights w{};
    for (std::size_t offset = 0; offset + 1 < kS; ++offset) {
        for (std::size_t i = 0; i < kS; ++i) {
            const auto basis = [&](double s) { return lagrange(i, static_cast<double>(offset) + s / h); };
            w.causal[offset][i] =
                Gauss::integrate([&](double s) { return std::exp(-(h - s)) * basis(s); }, 0.0, h);
            w.anticausal[offset][i] =
                Gauss::integrate([&](double s) { return std::exp(-s) * basis(s); }, 0.0, h);
        }
    }
    return w;
}

// First stencil node used for the cell [x_j, x_{j+1}]; centred where possible.
std::size_t stencil_start(std::size_t j, std::size_t n) {
    const std::size_t half = kS / 2 - 1;
    const std::size_t start = j >= half ? j - half : 0;
    return std::min(start, n - kS);
}

}  // namespace

KernelSpec::KernelSpec(Domain domain, KernelMethod method) : domain_(std::move(domain)), method_(method) {
    const std::size_t n = domain_.n_points();
    const double h = domain_.dx();
    if (method_ == KernelMethod::ExpFilter) {
        if (domain_.kind() != DomainKind::Line)
            throw std::invalid_argument("the exponential filter kernel requires a Line domain");
        filter_ = filter_weights(h);
    } else if (method_ == KernelMethod::DirectConvolution) {
        kernel_samples_.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double x = static_cast<double>(m) * h;
            kernel_samples_[m] = domain_.kind() == DomainKind::Line ? 0.5 * std::exp(-x)
                                                                     : green_periodic(x, domain_.period());
        }
        // g' jumps by -1 at the origin; the trapezoid end correction for the kink is -h^2/12 * phi(x_i).
        kernel_samples_[0] -= h / 12.0;
    }
}

Field KernelSpec::apply_direct(const Field& field) const {
    const std::size_t n = domain_.n_points();
    const bool periodic = domain_.kind() == DomainKind::Circle;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t m = periodic ? (i + n - j) % n : (i > j ? i - j : j - i);
            acc += kernel_samples_[m] * field[j];
        }
        out[i] = domain_.dx() * acc;
    }
    return Field(domain_, std::move(out));
}

Field KernelSpec::apply_exp_filter(const Field& field) const {
    const std::size_t n = domain_.n_points();
    const double decay = std::exp(-domain_.dx());
    std::vector<double> causal(n, 0.0);
    std::vector<double> anticausal(n, 0.0);
    // Cell j spans [x_j, x_{j+1}]; the state starts at zero at both ends.
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const std::size_t start = stencil_start(j, n);
        const auto& w = filter_.causal[j - start];
        double cell = 0.0;
        for (std::size_t i = 0; i < kS; ++i) cell += w[i] * field[start + i];
        causal[j + 1] = decay * causal[j] + cell;
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        const std::size_t start = stencil_start(j, n);
        const auto& w = filter_.anticausal[j - start];
        double cell = 0.0;
        for (std::size_t i = 0; i < kS; ++i) cell += w[i] * field[start + i];
        anticausal[j] = decay * anticausal[j + 1] + cell;
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (causal[i] + anticausal[i]);
    return Field(domain_, std::move(out));
}

Field lambda_inv2(const Field& field, const KernelSpec& spec) {
    if (field.domain() != spec.domain()) throw std::invalid_argument("field and kernel domains differ");
    switch (spec.method()) {
    case KernelMethod::SpectralMultiplier:
        return apply_multiplier(field, [](double k) { return std::complex<double>(1.0 / (1.0 + k * k), 0.0); });
    case KernelMethod::DirectConvolution:
        return spec.apply_direct(field);
    case KernelMethod::ExpFilter:
        return spec.apply_exp_filter(field);
    }
    throw std::logic_error("unreachable kernel method");
}

Field dx_lambda_inv2(const Field& field, const KernelSpec& spec) {
    if (spec.method() == KernelMethod::SpectralMultiplier) {
        if (field.domain() != spec.domain()) throw std::invalid_argument("field and kernel domains differ");
        return apply_multiplier(
            field, [](double k) { return std::complex<double>(0.0, k / (1.0 + k * k)); }, true);
    }
    return derivative(lambda_inv2(field, spec), 1);
}

Field rhs(const Field& u, const Nonlinearity& f, const KernelSpec& spec) {
    Field out = dx_lambda_inv2(f.apply(u), spec);
    out *= -1.0;
    return out;
}

IdentityResiduals identity_residuals(const Field& phi, const KernelSpec& spec) {
    const Field inv = lambda_inv2(phi, spec);
    const Field inv_xx = derivative(inv, 2);
    const Field r1 = inv - inv_xx - phi;
    const Field r2 = inv_xx - (inv - phi);
    return {r1.max_abs(), r2.max_abs()};
}

}  // namespace bbm
