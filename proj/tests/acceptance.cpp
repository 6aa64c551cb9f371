// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "bbm/diagnostics.hpp"
#include "bbm/evolution.hpp"
#include "bbm/experiments.hpp"
#include "bbm/kernel_ops.hpp"
#include "bbm/symbolic.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bbm;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

Field sine(const Domain& d, double amp) {
    return Field::sample(d, [&](double x) { return amp * std::sin(2.0 * kPi * x); });
}

double rel_max(const Field& a, const Field& ref) { return (a - ref).max_abs() / ref.max_abs(); }

// 1. (1 - d^2) Lambda^{-2} phi = phi and d^2 Lambda^{-2} = Lambda^{-2} - 1.
void operator_identities(Outcome& o) {
    double worst = 0.0;
    const Domain domains[] = {make_domain(DomainKind::Circle, 1.0, 256), make_domain(DomainKind::Line, 40.0, 1024)};
    for (const Domain& d : domains) {
        const KernelSpec spec(d, KernelMethod::SpectralMultiplier);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Field phi = random_smooth_field(d, 100 + seed, 40, 1.0);
            const auto r = identity_residuals(phi, spec);
            const double scale = phi.max_abs();
            worst = std::max({worst, r.inverse / scale, r.second / scale});
        }
    }
    o.detail << "max relative residual " << worst;
    o.require(worst < 1e-10, "residual < 1e-10");
}

// 2. Kernel methods agree; the Green's kernel has unit mass.
void kernel_cross_validation(Outcome& o) {
    const Domain line = make_domain(DomainKind::Line, 40.0, 1024);
    const KernelSpec spectral(line, KernelMethod::SpectralMultiplier);
    const KernelSpec filter(line, KernelMethod::ExpFilter);
    const KernelSpec direct(line, KernelMethod::DirectConvolution);
    std::vector<Field> fields;
    fields.push_back(Field::sample(line, [](double x) { return std::exp(-x * x / 9.0); }));
    fields.push_back(Field::sample(line, [](double x) { return solitary_wave(x, 0.0, 1.5, 3.0); }));
    fields.push_back(make_bump(line, BumpSpec{-4.0, 6.0, 0.8, BumpShape::CutoffExp}));
    fields.push_back(Field::sample(line, [](double x) { return std::sin(x) * std::exp(-x * x / 25.0); }));
    double worst_filter = 0.0, worst_direct = 0.0;
    for (const Field& phi : fields) {
        const Field ref = lambda_inv2(phi, spectral);
        worst_filter = std::max(worst_filter, rel_max(lambda_inv2(phi, filter), ref));
        worst_direct = std::max(worst_direct, rel_max(lambda_inv2(phi, direct), ref));
    }
    const Domain circle = make_domain(DomainKind::Circle, 1.0, 256);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Field phi = random_smooth_field(circle, 200 + seed, 10, 1.0);
        worst_direct = std::max(worst_direct, rel_max(lambda_inv2(phi, KernelSpec(circle, KernelMethod::DirectConvolution)),
                                                      lambda_inv2(phi, KernelSpec(circle, KernelMethod::SpectralMultiplier))));
    }
    const double mass_circle = oracle::quad([](double x) { return green_eval(x, DomainKind::Circle); }, 0.0, 1.0);
    const double mass_line = 2.0 * oracle::quad([](double x) { return green_eval(x, DomainKind::Line); }, 0.0, 40.0);
    const double mass_err = std::max(std::abs(mass_circle - 1.0), std::abs(mass_line - 1.0));
    o.detail << "expfilter " << worst_filter << ", direct " << worst_direct << ", |int g - 1| " << mass_err;
    o.require(worst_filter < 1e-8, "expfilter < 1e-8");
    o.require(worst_direct < 1e-6, "direct < 1e-6");
    o.require(mass_err < 1e-10, "kernel mass");
}

// 3. Exact characteristic certification.
void symbolic_certification(Outcome& o) {
    using namespace bbm::sym;
    const auto start = std::chrono::steady_clock::now();
    const DiffPoly u = DiffPoly::u(), utx = DiffPoly::u(1, 1), f = DiffPoly::f();
    int certified = 0;
    for (const DiffPoly& q : {DiffPoly(1), u, f - utx}) certified += verify_characteristic(q).exact_zero;
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 13);
    auto r = [&] { return Rational(num(rng)) / Rational(den(rng)); };
    for (int i = 0; i < 5; ++i) certified += verify_characteristic(r() + r() * u + r() * (f - utx)).exact_zero;
    const bool plus_rejected = !verify_characteristic(f + utx).exact_zero;
    const bool ux_rejected = !verify_characteristic(DiffPoly::u(0, 1)).exact_zero;
    int identities = 0;
    for (const auto& c : standard_currents())
        identities += (divergence(c.density, c.flux) - c.characteristic * bbm_operator()).is_zero();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.detail << certified << "/8 certified, f+u_tx rejected " << plus_rejected << ", u_x rejected " << ux_rejected
             << ", identities " << identities << "/3, " << secs << " s";
    o.require(certified == 8, "characteristics");
    o.require(plus_rejected && ux_rejected, "rejections");
    o.require(identities == 3, "divergence identities");
    o.require(secs < 1.0, "runtime < 1 s");
}

struct ConservationRun {
    DriftReport report;
    bool blowup = false;
};

ConservationRun conservation_run(double dt) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 256);
    const auto f = Nonlinearity::builtin("bbm");
    const SimConfig cfg{10.0, dt, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), f,
                        static_cast<long>(std::lround(0.1 / dt))};
    DiagnosticSeries series;
    const auto traj = simulate(sine(d, 0.1), cfg, [&](const SimState& s) { series.record(s, f, cfg.spec); }, false);
    return {drift_report(series, 1e-8), traj.blowup};
}

// 4. H^1 conservation under RK4.
void h1_conservation(Outcome& o) {
    const auto a = conservation_run(1e-3);
    const auto b = conservation_run(5e-4);
    const double e1 = a.report.of("energy"), e2 = b.report.of("energy");
    const double ratio = e1 / e2;
    o.detail << "energy drift " << e1 << " (dt/2: " << e2 << ", ratio " << ratio << "), mass drift "
             << a.report.of("mass") << ", h1 drift " << a.report.of("h1norm");
    o.require(!a.blowup && !b.blowup, "no blowup");
    o.require(e1 < 1e-8, "energy drift < 1e-8");
    o.require(ratio >= 8.0 && ratio <= 32.0, "dt-halving ratio in [8, 32]");
    o.require(a.report.of("mass") < 1e-12, "mass drift < 1e-12");
}

// 5. Solitary wave translated by c t.
void solitary_wave_regression(Outcome& o) {
    const Domain d = make_domain(DomainKind::Line, 40.0, 1024);
    const double c = 1.5, x0 = -7.5, T = 10.0;
    const auto f = Nonlinearity::builtin("bbm");
    // Closed form substituted into u_t - u_txx + (f(u))_x, all derivatives by fourth-order differences.
    const double h = 1e-2;
    const auto d1 = [h](const std::function<double(double)>& g, double s) {
        return (-g(s + 2 * h) + 8 * g(s + h) - 8 * g(s - h) + g(s - 2 * h)) / (12 * h);
    };
    const auto d2 = [h](const std::function<double(double)>& g, double s) {
        return (-g(s + 2 * h) + 16 * g(s + h) - 30 * g(s) + 16 * g(s - h) - g(s - 2 * h)) / (12 * h * h);
    };
    double res = 0.0;
    for (int i = 0; i <= 800; ++i) {
        const double x = -20.0 + 0.05 * i, t = 1.0;
        const double ut = d1([&](double s) { return solitary_wave(x, s, c, x0); }, t);
        const double utxx = d1([&](double s) { return d2([&](double y) { return solitary_wave(y, s, c, x0); }, x); }, t);
        const double fx = d1([&](double y) { return f.f(solitary_wave(y, t, c, x0)); }, x);
        res = std::max(res, std::abs(ut - utxx + fx));
    }
    const Field u0 = Field::sample(d, [&](double x) { return solitary_wave(x, 0.0, c, x0); });
    const SimConfig cfg{T, 1e-3, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), f, 1000};
    const auto traj = simulate(u0, cfg, {}, false);
    const Field exact = Field::sample(d, [&](double x) { return solitary_wave(x, T, c, x0); });
    const double err = (traj.final_state.u - exact).max_abs();
    o.detail << "closed-form residual " << res << ", L-inf error at t=10 " << err;
    o.require(res < 1e-6, "closed form residual < 1e-6");
    o.require(!traj.blowup, "no blowup");
    o.require(err < 1e-4, "error < 1e-4");
}

// 6. Compactly supported data leaks mass immediately.
void compact_support_leakage(Outcome& o) {
    const Domain d = make_domain(DomainKind::Line, 40.0, 1024);
    const SimConfig cfg{1.0, 1e-3, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), Nonlinearity::builtin("quadratic"), 1};
    const auto s = ucp_leakage(BumpSpec{0.0, 5.0, 0.5, BumpShape::CutoffExp}, cfg, 100);
    bool monotone = true;
    for (std::size_t i = 1; i < s.tail.size(); ++i) monotone &= s.tail[i] >= s.tail[i - 1];
    o.detail << "tail(0) " << s.tail[0] << ", tail(dt)/||u0||_1 " << s.tail[1] / s.initial_l1 << ", tail(100 dt) "
             << s.tail.back();
    o.require(s.tail[0] == 0.0, "tail(0) = 0");
    o.require(s.tail[1] > 1e-14 * s.initial_l1, "tail after one step");
    o.require(monotone, "nondecreasing over 100 steps");
    o.require(!s.blowup, "no blowup");
}

// 7. Segment-vanishing identity and positivity.
void segment_identity(Outcome& o) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 512);
    const Field u = vanishing_field(d, 0.4, 0.6, 0.15, 1.0);
    const auto r = segment_identity_check(u, VanishingWindow{0.0, 0.4, 0.6}, Nonlinearity::builtin("quadratic"),
                                          KernelSpec(d, KernelMethod::SpectralMultiplier));
    o.detail << "r1/||f||_inf " << r.r1 / r.f_max << ", r2 " << r.r2 << ", min Lambda^-2 f " << r.global_min
             << ", max |u| on window " << r.u_max_on_window;
    o.require(r.u_max_on_window == 0.0, "u vanishes on window");
    o.require(r.r1 < 1e-10 * r.f_max, "r1");
    o.require(r.r2 < 1e-8, "r2");
    o.require(r.global_min > 0.0, "positivity");
}

// 8. Vanished slices stay vanished; nonzero data keeps its H^1 norm.
void vanish_slice(Outcome& o) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 256);
    const auto f = Nonlinearity::builtin("bbm");
    const SimConfig cfg{5.0, 1e-3, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), f, 50};
    DiagnosticSeries zero;
    simulate(Field::zeros(d), cfg, [&](const SimState& s) { zero.record(s, f, cfg.spec); }, false);
    bool all_zero = zero.size() > 1;
    for (CurrentId id : kAllCurrents)
        for (double v : zero.values(id)) all_zero &= v == 0.0;
    for (double v : zero.h1_norm) all_zero &= v == 0.0;
    int passed = 0;
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto r = vanish_slice_check(random_smooth_field(d, seed, 8, 0.3), cfg, 1e-12, 0.9);
        passed += r.pass && !r.numerically_zero && r.min_h1 > 0.9 * r.initial_h1;
        worst = std::min(worst, r.min_h1 / r.initial_h1);
    }
    o.detail << "zero data exact " << all_zero << ", " << passed << "/20 random runs retained, worst min/initial H1 "
             << worst;
    o.require(all_zero, "zero data diagnostics exactly 0");
    o.require(passed == 20, "random data retention");
}

// 9. Picard iteration contracts.
void picard_contraction(Outcome& o) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 256);
    const SimConfig bbm_cfg{1.0, 1e-3, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), Nonlinearity::builtin("bbm"), 1};
    const auto r = picard_iterate(sine(d, 0.1), 0.1, 8, bbm_cfg);
    bool decreasing = r.distances.size() == 8;
    for (std::size_t k = 0; k + 1 < r.distances.size(); ++k) decreasing &= r.distances[k + 1] < r.distances[k];
    const SimConfig lin_cfg{1.0, 1e-3, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), Nonlinearity::builtin("linear"), 1};
    const Field u0 = sine(d, 0.1);
    const auto lin = picard_iterate(u0, 0.1, 10, lin_cfg);
    const double err = (lin.final_iterate - oracle::linear_exact(u0, 1.0, 0.1)).max_abs();
    o.detail << "d_k =";
    for (double v : r.distances) o.detail << " " << v;
    o.detail << "; linear error " << err;
    o.require(decreasing, "strictly decreasing");
    o.require(!r.diverged, "no divergence");
    o.require(err < 1e-8, "linear limit < 1e-8");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"operator identities", operator_identities},
        {"kernel cross-validation", kernel_cross_validation},
        {"symbolic certification", symbolic_certification},
        {"H1 conservation", h1_conservation},
        {"solitary-wave regression", solitary_wave_regression},
        {"compact-support leakage", compact_support_leakage},
        {"segment-vanishing identity", segment_identity},
        {"vanish-slice propagation", vanish_slice},
        {"Picard contraction", picard_contraction},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        o.detail.precision(3);
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s %zu. %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
