#pragma once

#include "bbm/core_fields.hpp"
#include "bbm/kernel_ops.hpp"
#include "bbm/nonlinearity.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bbm {

struct SimState {
    double t = 0.0;
    Field u;
    long step_count = 0;
};

struct SimConfig {
    double T = 1.0;
    double dt = 1e-3;
    double blowup_threshold = 1e6;
    KernelSpec spec;
    Nonlinearity nonlinearity;
    long callback_stride = 1;

    /// Throws std::invalid_argument naming the offending field.
    void validate(const Field& u0) const;
};

/// ||u||_inf crossed the threshold or a non-finite value appeared. `last_valid_time`
/// is the numerical lifespan.
class Blowup : public std::runtime_error {
public:
    Blowup(double last_valid_time, double t_attempted)
        : std::runtime_error("solution blew up after t = " + std::to_string(last_valid_time)),
          last_valid_time_(last_valid_time), t_attempted_(t_attempted) {}
    double last_valid_time() const { return last_valid_time_; }
    double t_attempted() const { return t_attempted_; }

private:
    double last_valid_time_;
    double t_attempted_;
};

/// One classical RK4 step of u_t = -d/dx Lambda^{-2} f(u). A negative dt steps backwards.
SimState step_rk4(const SimState& state, const SimConfig& config);
SimState step_rk4(const SimState& state, const SimConfig& config, double dt);

using StepCallback = std::function<void(const SimState&)>;

struct Trajectory {
    SimState final_state;
    std::vector<SimState> snapshots;  // every callback_stride steps, including t = 0 and the final step
    bool blowup = false;
    double lifespan = 0.0;  // last valid time when blowup is set
};

/// Runs to t >= T (the last step is shortened to land on T). Blowup is caught and reported
/// in the trajectory rather than thrown.
Trajectory simulate(const Field& u0, const SimConfig& config, const StepCallback& callback = {},
                    bool keep_snapshots = true);

struct PicardResult {
    std::vector<double> distances;  // d_k = ||u^{k+1}(T) - u^k(T)||_{H^1}
    Field final_iterate;            // u^{n_iters}(T)
    bool diverged = false;
};

/// u^{k+1}(t) = u0 + int_0^t rhs(u^k(s)) ds with composite trapezoid on `n_sub` subintervals.
/// Requires t_small * lipschitz * sup|g'| < 1/2 on the ball of radius 2||u0||_inf.
PicardResult picard_iterate(const Field& u0, double t_small, int n_iters, const SimConfig& config,
                            std::size_t n_sub = 1000);

}  // namespace bbm
