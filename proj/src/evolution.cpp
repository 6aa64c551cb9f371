#include "bbm/evolution.hpp"

#include <cmath>
#include <string>

namespace bbm {

void SimConfig::validate(const Field& u0) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive, got " + std::to_string(dt));
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be positive, got " + std::to_string(T));
    if (!(dt < T)) throw std::invalid_argument("dt must be smaller than T");
    if (callback_stride < 1) throw std::invalid_argument("callback_stride must be at least 1");
    if (!u0.all_finite()) throw std::invalid_argument("initial data must be finite");
    if (!(blowup_threshold > u0.max_abs()))
        throw std::invalid_argument("blowup_threshold must exceed ||u0||_inf");
    if (u0.domain() != spec.domain()) throw std::invalid_argument("initial data is not on the kernel domain");
}

namespace {

void guard(const Field& u, const SimState& from, double threshold, double t_attempted) {
    if (!u.all_finite() || u.max_abs() > threshold) throw Blowup(from.t, t_attempted);
}

}  // namespace

SimState step_rk4(const SimState& state, const SimConfig& config) { return step_rk4(state, config, config.dt); }

SimState step_rk4(const SimState& state, const SimConfig& config, double dt) {
    const auto& f = config.nonlinearity;
    const auto& spec = config.spec;
    const double lim = config.blowup_threshold;
    const double t_next = state.t + dt;

    const Field k1 = rhs(state.u, f, spec);
    const Field u2 = axpy(state.u, 0.5 * dt, k1);
    guard(u2, state, lim, t_next);
    const Field k2 = rhs(u2, f, spec);
    const Field u3 = axpy(state.u, 0.5 * dt, k2);
    guard(u3, state, lim, t_next);
    const Field k3 = rhs(u3, f, spec);
    const Field u4 = axpy(state.u, dt, k3);
    guard(u4, state, lim, t_next);
    const Field k4 = rhs(u4, f, spec);

    Field next = state.u;
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < next.size(); ++j)
        next[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    guard(next, state, lim, t_next);
    return {t_next, std::move(next), state.step_count + 1};
}

Trajectory simulate(const Field& u0, const SimConfig& config, const StepCallback& callback, bool keep_snapshots) {
    config.validate(u0);
    const auto n_full = static_cast<long>(std::floor(config.T / config.dt + 1e-9));
    const double remainder = config.T - static_cast<double>(n_full) * config.dt;
    const bool partial = remainder > 1e-12 * config.T;
    const long n_steps = n_full + (partial ? 1 : 0);

    Trajectory traj{SimState{0.0, u0, 0}, {}, false, 0.0};
    auto record = [&](const SimState& s) {
        if (callback) callback(s);
        if (keep_snapshots) traj.snapshots.push_back(s);
    };
    record(traj.final_state);

    SimState state = traj.final_state;
    try {
        for (long k = 1; k <= n_steps; ++k) {
            const bool last = k == n_steps;
            const double dt = (partial && last) ? remainder : config.dt;
            state = step_rk4(state, config, dt);
            // t = k*dt, not a running sum.
            state.t = (partial && last) ? config.T : static_cast<double>(k) * config.dt;
            if (k % config.callback_stride == 0 || last) record(state);
        }
    } catch (const Blowup& b) {
        traj.blowup = true;
        traj.lifespan = b.last_valid_time();
    }
    traj.final_state = state;
    if (!traj.blowup) traj.lifespan = state.t;
    return traj;
}

PicardResult picard_iterate(const Field& u0, double t_small, int n_iters, const SimConfig& config, std::size_t n_sub) {
    if (!(t_small > 0.0)) throw std::invalid_argument("Picard horizon must be positive");
    if (n_iters < 1) throw std::invalid_argument("Picard needs at least one iteration");
    if (n_sub < 1) throw std::invalid_argument("Picard quadrature needs at least one subinterval");
    const double radius = std::max(2.0 * u0.max_abs(), 1e-300);
    // sup-norm Lipschitz bound of u -> d/dx Lambda^{-2} f(u) is Lip(f) * ||g'||_{L^1} <= Lip(f).
    const double lip = lipschitz_estimate(config.nonlinearity, radius, 2001);
    if (!(t_small * lip < 0.5))
        throw std::invalid_argument("Picard horizon too long for contraction: T_small * Lip = " +
                                    std::to_string(t_small * lip) + " >= 1/2");

    const double h = t_small / static_cast<double>(n_sub);
    std::vector<Field> iterate(n_sub + 1, u0);
    PicardResult result{{}, u0, false};
    int growth_run = 0;
    for (int k = 0; k < n_iters; ++k) {
        std::vector<Field> next;
        next.reserve(n_sub + 1);
        next.push_back(u0);
        Field integral = Field::zeros(u0.domain());
        Field prev_rhs = rhs(iterate[0], config.nonlinearity, config.spec);
        for (std::size_t i = 1; i <= n_sub; ++i) {
            Field cur_rhs = rhs(iterate[i], config.nonlinearity, config.spec);
            for (std::size_t j = 0; j < integral.size(); ++j) integral[j] += 0.5 * h * (prev_rhs[j] + cur_rhs[j]);
            next.push_back(u0 + integral);
            prev_rhs = std::move(cur_rhs);
        }
        const double d = norm(next.back() - iterate.back(), NormKind::hs(1.0));
        if (!result.distances.empty() && d > result.distances.back()) {
            if (++growth_run >= 3) result.diverged = true;
        } else {
            growth_run = 0;
        }
        result.distances.push_back(d);
        iterate = std::move(next);
    }
    result.final_iterate = iterate.back();
    return result;
}

}  // namespace bbm
