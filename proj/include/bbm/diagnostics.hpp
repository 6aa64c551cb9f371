#pragma once

#include "bbm/evolution.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace bbm {

/// The three conserved currents: (u, -u_tx + f), ((u^2+u_x^2)/2, -u u_tx + h(u)),
/// (F(u), (u_tx^2 - u_t^2)/2 - f u_tx + f^2/2).
enum class CurrentId { Mass, Energy, Potential };

inline constexpr std::array<CurrentId, 3> kAllCurrents{CurrentId::Mass, CurrentId::Energy, CurrentId::Potential};

std::string to_string(CurrentId id);

/// u and its derivatives, with u_t = rhs(u) taken from the semidiscrete system.
struct Jet {
    Field u, u_x, u_t, u_tx;
};

Jet evaluate_jet(const Field& u, const Nonlinearity& f, const KernelSpec& spec);

Field density(CurrentId id, const Jet& jet, const Nonlinearity& f);
Field flux(CurrentId id, const Jet& jet, const Nonlinearity& f);

double density_integral(const Field& u, CurrentId id, const Nonlinearity& f, const KernelSpec& spec);
double flux_at(const Field& u, CurrentId id, std::size_t grid_index, const Nonlinearity& f, const KernelSpec& spec);

struct DiagnosticSeries {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> energy;
    std::vector<double> potential;
    std::vector<double> h1_norm;

    /// Appends one row; times must be strictly increasing.
    void record(const SimState& state, const Nonlinearity& f, const KernelSpec& spec);
    std::size_t size() const { return times.size(); }
    const std::vector<double>& values(CurrentId id) const;
};

struct DriftEntry {
    std::string quantity;
    double drift = 0.0;
    bool flagged = false;
};

struct DriftReport {
    std::vector<DriftEntry> entries;  // mass, energy, potential, h1norm
    double of(const std::string& quantity) const;
    bool any_flagged() const;
};

/// max_t |q(t) - q(0)| / max(|q(0)|, 1) for each tracked quantity.
double relative_drift(const std::vector<double>& series);
DriftReport drift_report(const DiagnosticSeries& series, double tolerance);

/// CSV with header `t,mass,energy,potential,h1norm`, 17 significant digits.
void write_diagnostics_csv(std::ostream& os, const DiagnosticSeries& series, const std::string& comment = {});

}  // namespace bbm
