#include "bbm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace bbm {

std::string to_string(CurrentId id) {
    switch (id) {
    case CurrentId::Mass: return "mass";
    case CurrentId::Energy: return "energy";
    case CurrentId::Potential: return "potential";
    }
    return "unknown";
}

Jet evaluate_jet(const Field& u, const Nonlinearity& f, const KernelSpec& spec) {
    Field u_t = rhs(u, f, spec);
    Field u_tx = derivative(u_t, 1);
    return {u, derivative(u, 1), std::move(u_t), std::move(u_tx)};
}

namespace {

template <typename Fn>
Field pointwise(const Jet& jet, Fn&& fn) {
    Field out = Field::zeros(jet.u.domain());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = fn(jet.u[j], jet.u_x[j], jet.u_t[j], jet.u_tx[j]);
    return out;
}

}  // namespace

Field density(CurrentId id, const Jet& jet, const Nonlinearity& f) {
    switch (id) {
    case CurrentId::Mass: return jet.u;
    case CurrentId::Energy:
        return pointwise(jet, [](double u, double ux, double, double) { return 0.5 * (u * u + ux * ux); });
    case CurrentId::Potential:
        return pointwise(jet, [&](double u, double, double, double) { return f.F_anti(u); });
    }
    throw std::logic_error("unreachable current id");
}

Field flux(CurrentId id, const Jet& jet, const Nonlinearity& f) {
    switch (id) {
    case CurrentId::Mass:
        return pointwise(jet, [&](double u, double, double, double utx) { return -utx + f.f(u); });
    case CurrentId::Energy:
        return pointwise(jet, [&](double u, double, double, double utx) { return -u * utx + f.h_anti(u); });
    case CurrentId::Potential:
        return pointwise(jet, [&](double u, double, double ut, double utx) {
            const double fu = f.f(u);
            return 0.5 * (utx * utx - ut * ut) - fu * utx + 0.5 * fu * fu;
        });
    }
    throw std::logic_error("unreachable current id");
}

double density_integral(const Field& u, CurrentId id, const Nonlinearity& f, const KernelSpec& /*spec*/) {
    // Densities need only u and u_x; skip the rhs evaluation.
    Jet jet{u, id == CurrentId::Energy ? derivative(u, 1) : Field::zeros(u.domain()), Field::zeros(u.domain()),
            Field::zeros(u.domain())};
    return integrate(density(id, jet, f));
}

double flux_at(const Field& u, CurrentId id, std::size_t grid_index, const Nonlinearity& f, const KernelSpec& spec) {
    if (grid_index >= u.size()) throw std::out_of_range("flux grid index out of range");
    return flux(id, evaluate_jet(u, f, spec), f)[grid_index];
}

void DiagnosticSeries::record(const SimState& state, const Nonlinearity& f, const KernelSpec& spec) {
    if (!times.empty() && !(state.t > times.back()))
        throw std::invalid_argument("diagnostic times must be strictly increasing");
    times.push_back(state.t);
    mass.push_back(density_integral(state.u, CurrentId::Mass, f, spec));
    energy.push_back(density_integral(state.u, CurrentId::Energy, f, spec));
    potential.push_back(density_integral(state.u, CurrentId::Potential, f, spec));
    h1_norm.push_back(norm(state.u, NormKind::hs(1.0)));
}

const std::vector<double>& DiagnosticSeries::values(CurrentId id) const {
    switch (id) {
    case CurrentId::Mass: return mass;
    case CurrentId::Energy: return energy;
    case CurrentId::Potential: return potential;
    }
    throw std::logic_error("unreachable current id");
}

double relative_drift(const std::vector<double>& series) {
    if (series.empty()) return 0.0;
    const double q0 = series.front();
    double worst = 0.0;
    for (double q : series) worst = std::max(worst, std::abs(q - q0));
    return worst / std::max(std::abs(q0), 1.0);
}

double DriftReport::of(const std::string& quantity) const {
    for (const auto& e : entries)
        if (e.quantity == quantity) return e.drift;
    throw std::out_of_range("no drift entry for '" + quantity + "'");
}

bool DriftReport::any_flagged() const {
    return std::any_of(entries.begin(), entries.end(), [](const DriftEntry& e) { return e.flagged; });
}

DriftReport drift_report(const DiagnosticSeries& series, double tolerance) {
    if (series.size() < 2) throw std::invalid_argument("drift report needs at least two samples");
    DriftReport r;
    auto add = [&](const char* name, const std::vector<double>& v) {
        const double d = relative_drift(v);
        r.entries.push_back({name, d, d > tolerance});
    };
    add("mass", series.mass);
    add("energy", series.energy);
    add("potential", series.potential);
    add("h1norm", series.h1_norm);
    return r;
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticSeries& series, const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    os << "t,mass,energy,potential,h1norm\n" << std::setprecision(17);
    for (std::size_t i = 0; i < series.size(); ++i)
        os << series.times[i] << ',' << series.mass[i] << ',' << series.energy[i] << ',' << series.potential[i]
           << ',' << series.h1_norm[i] << '\n';
}

}  // namespace bbm
