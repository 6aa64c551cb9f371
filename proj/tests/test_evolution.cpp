#include "bbm/diagnostics.hpp"
#include "bbm/evolution.hpp"
#include "bbm/experiments.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace bbm;

namespace {

constexpr double kPi = std::numbers::pi;

SimConfig circle_config(const Domain& d, const char* f, double T, double dt) {
    return SimConfig{T, dt, 1e6, KernelSpec(d, KernelMethod::SpectralMultiplier), Nonlinearity::builtin(f), 1};
}

Field small_sine(const Domain& d, double amp = 0.1) {
    return Field::sample(d, [&](double x) { return amp * std::sin(2.0 * kPi * x); });
}

}  // namespace

TEST(StepRk4, ZeroIsFixedPoint) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto cfg = circle_config(d, "bbm", 1.0, 1e-2);
    SimState s{0.0, Field::zeros(d), 0};
    for (int i = 0; i < 50; ++i) s = step_rk4(s, cfg);
    EXPECT_EQ(s.u.max_abs(), 0.0);
    EXPECT_EQ(s.step_count, 50);
    EXPECT_NEAR(s.t, 0.5, 1e-14);
}

TEST(StepRk4, ConstantIsFixedPoint) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto cfg = circle_config(d, "bbm", 1.0, 1e-2);
    SimState s{0.0, Field::sample(d, [](double) { return 0.8; }), 0};
    for (int i = 1; i <= 20; ++i) {
        s = step_rk4(s, cfg);
        for (double v : s.u.values()) EXPECT_NEAR(v, 0.8, 1e-15 * i);
    }
}

TEST(StepRk4, LinearStepMatchesExactSolution) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto cfg = circle_config(d, "linear", 1.0, 1e-3);
    const Field u0 = small_sine(d);
    const SimState s = step_rk4(SimState{0.0, u0, 0}, cfg);
    const Field exact = oracle::linear_exact(u0, 1.0, 1e-3);
    EXPECT_LT((s.u - exact).max_abs(), 1e-12);
}

TEST(StepRk4, LinearRandomDataMatchesExactSolution) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto cfg = circle_config(d, "linear", 1.0, 1e-2);
    const Field u0 = random_smooth_field(d, 5, 12, 0.3);
    SimState s{0.0, u0, 0};
    for (int i = 0; i < 100; ++i) s = step_rk4(s, cfg);
    EXPECT_LT((s.u - oracle::linear_exact(u0, 1.0, s.t)).max_abs(), 1e-10);
}

TEST(StepRk4, BlowupOnNonFiniteOrThreshold) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    auto cfg = circle_config(d, "bbm", 1.0, 1e-2);
    Field bad = small_sine(d);
    bad[3] = NAN;
    EXPECT_THROW(step_rk4(SimState{0.0, bad, 0}, cfg), Blowup);
    cfg.blowup_threshold = 0.05;
    EXPECT_THROW(step_rk4(SimState{0.0, small_sine(d), 0}, cfg), Blowup);
}

TEST(Simulate, ZeroRunsToT) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto traj = simulate(Field::zeros(d), circle_config(d, "bbm", 1.0, 1e-2));
    EXPECT_FALSE(traj.blowup);
    EXPECT_NEAR(traj.final_state.t, 1.0, 1e-12);
    EXPECT_EQ(traj.final_state.u.max_abs(), 0.0);
    EXPECT_EQ(traj.snapshots.front().t, 0.0);
    EXPECT_EQ(traj.snapshots.size(), 101u);
}

TEST(Simulate, LandsExactlyOnT) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto traj = simulate(small_sine(d), circle_config(d, "bbm", 0.105, 1e-2));
    EXPECT_DOUBLE_EQ(traj.final_state.t, 0.105);
    EXPECT_EQ(traj.final_state.step_count, 11);
}

TEST(Simulate, CallbackStride) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    auto cfg = circle_config(d, "bbm", 1.0, 1e-2);
    cfg.callback_stride = 10;
    int calls = 0;
    const auto traj = simulate(small_sine(d), cfg, [&](const SimState&) { ++calls; });
    EXPECT_EQ(calls, 11);
    EXPECT_EQ(traj.snapshots.size(), 11u);
}

TEST(Simulate, DeterministicBitForBit) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 128);
    const auto cfg = circle_config(d, "bbm", 0.5, 1e-2);
    const Field u0 = random_smooth_field(d, 17, 10, 0.5);
    const auto a = simulate(u0, cfg, {}, false);
    const auto b = simulate(u0, cfg, {}, false);
    for (std::size_t j = 0; j < d.n_points(); ++j) EXPECT_EQ(a.final_state.u[j], b.final_state.u[j]);
}

TEST(Simulate, ReportsBlowupLifespan) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    auto cfg = circle_config(d, "quartic", 5.0, 1e-2);
    cfg.blowup_threshold = 1e3;
    const Field u0 = Field::sample(d, [](double x) { return 3.0 + std::sin(2.0 * kPi * x); });
    // A mild threshold guarantees the guard fires once the steep profile makes RK4 unstable.
    cfg.dt = 0.5;
    cfg.T = 50.0;
    const auto traj = simulate(u0, cfg, {}, false);
    EXPECT_TRUE(traj.blowup);
    EXPECT_LT(traj.lifespan, 50.0);
    EXPECT_GE(traj.lifespan, 0.0);
}

TEST(Simulate, ValidationNamesField) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    auto cfg = circle_config(d, "bbm", 1.0, 1e-2);
    cfg.dt = 0.0;
    try {
        simulate(small_sine(d), cfg);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("dt"), std::string::npos);
    }
    cfg.dt = 2.0;
    EXPECT_THROW(simulate(small_sine(d), cfg), std::invalid_argument);
    cfg.dt = 1e-2;
    cfg.blowup_threshold = 0.01;
    EXPECT_THROW(simulate(small_sine(d), cfg), std::invalid_argument);
    cfg.blowup_threshold = 1e6;
    EXPECT_THROW(simulate(small_sine(make_domain(DomainKind::Circle, 1.0, 32)), cfg), std::invalid_argument);
}

TEST(Simulate, TimeReversibility) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 128);
    const auto cfg = circle_config(d, "bbm", 1.0, 1e-2);
    const Field u0 = random_smooth_field(d, 3, 8, 0.2);
    SimState s{0.0, u0, 0};
    for (int i = 0; i < 100; ++i) s = step_rk4(s, cfg, 1e-2);
    for (int i = 0; i < 100; ++i) s = step_rk4(s, cfg, -1e-2);
    EXPECT_LT((s.u - u0).max_abs(), 1e-8 * u0.max_abs());
    EXPECT_NEAR(s.t, 0.0, 1e-12);
}

TEST(Simulate, FourthOrderGlobalError) {
    // Large amplitude and steps so truncation error dominates roundoff.
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const Field u0 = small_sine(d, 2.0);
    const auto run = [&](double dt) { return simulate(u0, circle_config(d, "bbm", 4.0, dt), {}, false).final_state.u; };
    const Field ref = run(1e-3);
    const double e1 = norm(run(0.08) - ref, NormKind::hs(1.0));
    const double e2 = norm(run(0.04) - ref, NormKind::hs(1.0));
    const double e3 = norm(run(0.02) - ref, NormKind::hs(1.0));
    EXPECT_GE(e1 / e2, 8.0);
    EXPECT_LE(e1 / e2, 32.0);
    EXPECT_GE(e2 / e3, 8.0);
    EXPECT_LE(e2 / e3, 32.0);
}

TEST(Picard, ZeroDataGivesZeroDistances) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const auto r = picard_iterate(Field::zeros(d), 0.1, 5, circle_config(d, "bbm", 1.0, 1e-2), 100);
    ASSERT_EQ(r.distances.size(), 5u);
    for (double v : r.distances) EXPECT_EQ(v, 0.0);
    EXPECT_FALSE(r.diverged);
}

TEST(Picard, ContractsForSmallBbmData) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 128);
    const auto r = picard_iterate(small_sine(d), 0.1, 8, circle_config(d, "bbm", 1.0, 1e-2));
    ASSERT_EQ(r.distances.size(), 8u);
    for (std::size_t k = 0; k + 1 < r.distances.size(); ++k)
        EXPECT_LT(r.distances[k + 1], r.distances[k]) << "k=" << k;
    EXPECT_FALSE(r.diverged);
}

TEST(Picard, LinearConvergesToExactSolution) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    const Field u0 = small_sine(d);
    const auto r = picard_iterate(u0, 0.1, 10, circle_config(d, "linear", 1.0, 1e-2));
    EXPECT_LT((r.final_iterate - oracle::linear_exact(u0, 1.0, 0.1)).max_abs(), 1e-8);
}

TEST(Picard, RejectsNonContractingHorizon) {
    const Domain d = make_domain(DomainKind::Circle, 1.0, 64);
    EXPECT_THROW(picard_iterate(small_sine(d), 1.0, 3, circle_config(d, "linear", 1.0, 1e-2)), std::invalid_argument);
}
