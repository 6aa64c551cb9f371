#include "bbm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bbm {

double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

Field make_bump(const Domain& domain, const BumpSpec& bump) {
    if (!(bump.radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
    const double lo = domain.left();
    const double hi = lo + domain.period();
    if (!(bump.center - bump.radius > lo && bump.center + bump.radius < hi))
        throw std::invalid_argument("bump support must lie strictly inside the domain");
    return Field::sample(domain, [&](double x) {
        const double r = (x - bump.center) / bump.radius;
        if (std::abs(r) >= 1.0) return 0.0;
        if (bump.shape == BumpShape::RaisedCosine) return bump.amplitude * 0.5 * (1.0 + std::cos(std::numbers::pi * r));
        return bump.amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
    });
}

Field random_smooth_field(const Domain& domain, std::uint64_t seed, int modes, double amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(modes));
    std::vector<double> b(static_cast<std::size_t>(modes));
    for (int k = 1; k <= modes; ++k) {
        const double scale = amplitude / (static_cast<double>(k) * static_cast<double>(k));
        a[static_cast<std::size_t>(k - 1)] = scale * coeff(rng);
        b[static_cast<std::size_t>(k - 1)] = scale * coeff(rng);
    }
    return Field::sample(domain, [&](double x) {
        double v = 0.0;
        for (int k = 1; k <= modes; ++k) {
            const double arg = domain.wavenumber(k) * (x - domain.left());
            v += a[static_cast<std::size_t>(k - 1)] * std::cos(arg) + b[static_cast<std::size_t>(k - 1)] * std::sin(arg);
        }
        return v;
    });
}

double solitary_wave(double x, double t, double speed, double center) {
    if (!(speed > 1.0)) throw std::invalid_argument("solitary wave speed must exceed 1");
    const double kappa = 0.5 * std::sqrt(1.0 - 1.0 / speed);
    const double s = 1.0 / std::cosh(kappa * (x - center - speed * t));
    return 3.0 * (speed - 1.0) * s * s;
}

double tail_mass(const Field& u, const BumpSpec& bump) {
    const Domain& d = u.domain();
    const double cut = bump.radius + 2.0 * d.dx();
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        if (std::abs(d.point(j) - bump.center) > cut) sum += std::abs(u[j]);
    return d.dx() * sum;
}

LeakageSeries ucp_leakage(const BumpSpec& bump, const SimConfig& config, long n_steps) {
    const Domain& d = config.spec.domain();
    if (d.kind() != DomainKind::Line) throw std::invalid_argument("leakage experiment needs a Line domain");
    if (bump.amplitude < 0.0) throw std::invalid_argument("bump amplitude must be nonnegative");
    if (0.5 * d.period() < 4.0 * bump.radius) throw std::invalid_argument("leakage experiment needs L >= 4 radius");
    const Field u0 = make_bump(d, bump);

    LeakageSeries out;
    double l1 = 0.0;
    for (double v : u0.values()) l1 += std::abs(v);
    out.initial_l1 = d.dx() * l1;

    SimState state{0.0, u0, 0};
    out.times.push_back(0.0);
    out.tail.push_back(tail_mass(u0, bump));
    try {
        for (long k = 1; k <= n_steps; ++k) {
            state = step_rk4(state, config);
            state.t = static_cast<double>(k) * config.dt;
            out.times.push_back(state.t);
            out.tail.push_back(tail_mass(state.u, bump));
        }
    } catch (const Blowup&) {
        out.blowup = true;
    }
    return out;
}

Field vanishing_field(const Domain& domain, double a, double b, double ramp, double amplitude) {
    if (domain.kind() != DomainKind::Circle) throw std::invalid_argument("vanishing_field expects a Circle domain");
    const double p = domain.period();
    return Field::sample(domain, [&](double x) {
        double dist = 0.0;
        if (x < a) dist = std::min(a - x, x + p - b);
        else if (x > b) dist = std::min(x - b, a + p - x);
        const double cutoff = smooth_step(dist / ramp);
        return amplitude * std::sin(2.0 * std::numbers::pi * x / p) * cutoff;
    });
}

SegmentReport segment_identity_check(const Field& u, const VanishingWindow& window, const Nonlinearity& f,
                                     const KernelSpec& spec) {
    const Domain& d = u.domain();
    if (!(window.a < window.b)) throw std::invalid_argument("window needs a < b");
    if (window.b - window.a < 4.0 * d.dx()) throw std::invalid_argument("window narrower than 4 grid cells");
    if (window.a < d.left() || window.b > d.left() + d.period())
        throw std::invalid_argument("window outside the domain");
    if (f.f(0.0) != 0.0) throw std::invalid_argument("segment identity requires f(0) = 0");

    const Field fu = f.apply(u);
    const Field inv = lambda_inv2(fu, spec);
    // Single multiplier -k^2/(1+k^2) on the spectral path.
    const Field inv_xx = spec.method() == KernelMethod::SpectralMultiplier
                             ? apply_multiplier(
                                   fu, [](double k) { return std::complex<double>(-k * k / (1.0 + k * k), 0.0); }, false)
                             : derivative(inv, 2);
    const Field grad = dx_lambda_inv2(fu, spec);

    SegmentReport r;
    r.f_max = fu.max_abs();
    bool nonneg = true;
    bool nonpos = true;
    for (double v : fu.values()) {
        nonneg &= v >= 0.0;
        nonpos &= v <= 0.0;
    }
    const double sign = nonneg ? 1.0 : -1.0;
    r.sign_definite = (nonneg || nonpos) && r.f_max > 0.0;

    double window_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = d.point(j);
        if (x < window.a || x > window.b) continue;
        r.r1 = std::max(r.r1, std::abs(inv_xx[j] - (inv[j] - fu[j])));
        r.u_max_on_window = std::max(r.u_max_on_window, std::abs(u[j]));
        window_min = std::min(window_min, sign * inv[j]);
    }
    r.global_min = sign * inv.values()[0];
    for (double v : inv.values()) r.global_min = std::min(r.global_min, sign * v);

    const SpectralField grad_hat = to_spectral(grad);
    const SpectralField inv_hat = to_spectral(inv);
    const double boundary = spectral_eval(grad_hat, window.b) - spectral_eval(grad_hat, window.a);
    r.r2 = std::abs(boundary - spectral_integral(inv_hat, window.a, window.b));
    if (r.sign_definite) {
        r.s = window_min;
    } else {
        r.s = 0.0;
        r.global_min = r.f_max > 0.0 ? r.global_min : 0.0;
    }
    return r;
}

VanishSliceReport vanish_slice_check(const Field& u0, const SimConfig& config, double epsilon, double retention) {
    DiagnosticSeries series;
    const Trajectory traj = simulate(
        u0, config, [&](const SimState& s) { series.record(s, config.nonlinearity, config.spec); }, false);

    VanishSliceReport r;
    r.blowup = traj.blowup;
    r.initial_h1 = series.h1_norm.front();
    r.min_h1 = *std::min_element(series.h1_norm.begin(), series.h1_norm.end());
    r.max_h1 = *std::max_element(series.h1_norm.begin(), series.h1_norm.end());
    r.energy_drift = relative_drift(series.energy);
    r.numerically_zero = r.min_h1 < epsilon;
    if (r.blowup) r.pass = false;
    else if (r.numerically_zero) r.pass = r.max_h1 < epsilon * (1.0 + 1e3 * r.energy_drift);
    else r.pass = r.min_h1 > retention * r.initial_h1;
    return r;
}

ConvergenceTable convergence_study(const std::function<Field(const Domain&)>& make_u0, const SimConfig& base,
                                   const std::vector<double>& dt_list, const std::vector<std::size_t>& n_list) {
    if (!std::is_sorted(dt_list.rbegin(), dt_list.rend())) throw std::invalid_argument("dt_list must be descending");
    if (!std::is_sorted(n_list.begin(), n_list.end())) throw std::invalid_argument("n_list must be ascending");
    const Domain& bd = base.spec.domain();
    const double length = bd.kind() == DomainKind::Circle ? bd.period() : 0.5 * bd.period();

    ConvergenceTable table;
    for (std::size_t n : n_list) {
        const Domain d = make_domain(bd.kind(), length, n);
        const Field u0 = make_u0(d);
        std::vector<Field> finals;
        const std::size_t first_row = table.rows.size();
        for (double dt : dt_list) {
            SimConfig cfg{base.T, dt, base.blowup_threshold, KernelSpec(d, base.spec.method()), base.nonlinearity,
                          base.callback_stride};
            DiagnosticSeries series;
            const Trajectory traj =
                simulate(u0, cfg, [&](const SimState& s) { series.record(s, cfg.nonlinearity, cfg.spec); }, false);
            if (traj.blowup) throw Blowup(traj.lifespan, traj.final_state.t);
            table.rows.push_back({dt, n, relative_drift(series.energy), series.h1_norm.back(), 0.0, 0.0});
            finals.push_back(traj.final_state.u);
        }
        for (std::size_t i = 0; i + 1 < dt_list.size(); ++i) {
            auto& row = table.rows[first_row + i];
            const auto& next = table.rows[first_row + i + 1];
            row.richardson = (finals[i] - finals[i + 1]).max_abs();
            row.temporal_order = (row.energy_drift > 0.0 && next.energy_drift > 0.0)
                                     ? std::log(row.energy_drift / next.energy_drift) / std::log(dt_list[i] / dt_list[i + 1])
                                     : 0.0;
        }
    }
    return table;
}

}  // namespace bbm
