#pragma once

#include "bbm/diagnostics.hpp"
#include "bbm/evolution.hpp"

#include <cstdint>
#include <vector>

namespace bbm {

struct VanishingWindow {
    double t0 = 0.0;
    double a = 0.0;
    double b = 0.0;
};

enum class BumpShape { CutoffExp, RaisedCosine };

struct BumpSpec {
    double center = 0.0;
    double radius = 1.0;
    double amplitude = 1.0;
    BumpShape shape = BumpShape::CutoffExp;
};

/// Samples the bump; exactly zero outside [center - radius, center + radius].
Field make_bump(const Domain& domain, const BumpSpec& bump);

/// Smooth transition 0 -> 1 on [0, 1], flat to all orders at both ends.
double smooth_step(double s);

/// Random smooth data sum_{k=1}^{modes} (a_k cos + b_k sin)(kappa_k x) with |a_k|, |b_k| <= amplitude / k^2.
Field random_smooth_field(const Domain& domain, std::uint64_t seed, int modes, double amplitude);

/// Solitary wave of u_t - u_txx + u_x + u u_x = 0 travelling at speed c > 1:
/// 3(c-1) sech^2(sqrt(1 - 1/c)/2 (x - center - c t)).
double solitary_wave(double x, double t, double speed, double center);

// ---------------------------------------------------------------- leakage

struct LeakageSeries {
    std::vector<double> times;
    std::vector<double> tail;  // int_{|x - center| > radius + 2 dx} |u| dx
    double initial_l1 = 0.0;
    bool blowup = false;
};

double tail_mass(const Field& u, const BumpSpec& bump);

/// Evolves from the bump for `n_steps` steps of config.dt, recording the tail every step.
LeakageSeries ucp_leakage(const BumpSpec& bump, const SimConfig& config, long n_steps);

// ---------------------------------------------------------------- segment identity

struct SegmentReport {
    double r1 = 0.0;              // max_[a,b] |d^2 L f - (L f - f)|, L = Lambda^{-2}
    double r2 = 0.0;              // |(G(b) - G(a)) - int_a^b L f|, G = d/dx L f
    double s = 0.0;               // min_[a,b] L f (0 when f(u) is not sign-definite or u = 0)
    double global_min = 0.0;      // min over the domain of L f
    double f_max = 0.0;           // ||f(u)||_inf
    double u_max_on_window = 0.0; // max_[a,b] |u|, the vanishing hypothesis
    bool sign_definite = false;
};

/// `window.t0` is informational; u is the slice at that time.
SegmentReport segment_identity_check(const Field& u, const VanishingWindow& window, const Nonlinearity& f,
                                     const KernelSpec& spec);

/// sin(2 pi k x / period) * cutoff, with the cutoff identically zero on [a, b] and rising
/// smoothly to 1 over `ramp` on each side (Circle domains).
Field vanishing_field(const Domain& domain, double a, double b, double ramp, double amplitude);

// ---------------------------------------------------------------- vanish slice

struct VanishSliceReport {
    double min_h1 = 0.0;
    double max_h1 = 0.0;
    double initial_h1 = 0.0;
    double energy_drift = 0.0;
    bool numerically_zero = false;  // min_h1 < epsilon
    bool pass = false;
    bool blowup = false;
};

/// If min_t ||u(t)||_{H^1} < epsilon the run must stay below epsilon * (1 + 1e3 * energy drift);
/// otherwise it passes when min_t ||u(t)||_{H^1} > retention * ||u0||_{H^1}.
VanishSliceReport vanish_slice_check(const Field& u0, const SimConfig& config, double epsilon,
                                     double retention = 0.9);

// ---------------------------------------------------------------- convergence

struct ConvergenceRow {
    double dt = 0.0;
    std::size_t n_points = 0;
    double energy_drift = 0.0;
    double final_h1 = 0.0;
    double richardson = 0.0;  // ||u_final(dt) - u_final(dt/2)||_inf, 0 for the last dt
    double temporal_order = 0.0;  // log(drift ratio) / log(dt ratio), 0 for the last dt
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
};

/// Grid over dt_list (descending) x n_list (ascending). Each resolution reuses the base
/// domain kind, period and kernel method; `make_u0` samples the initial data on it.
ConvergenceTable convergence_study(const std::function<Field(const Domain&)>& make_u0, const SimConfig& base,
                                   const std::vector<double>& dt_list, const std::vector<std::size_t>& n_list);

}  // namespace bbm
