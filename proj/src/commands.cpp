#include "bbm/commands.hpp"

#include "bbm/diagnostics.hpp"
#include "bbm/expr_parser.hpp"
#include "bbm/run_config.hpp"
#include "bbm/symbolic.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace bbm {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path resolve_output_dir(const RunConfig& config) {
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return fs::path(env);
    return fs::path(config.output_dir);
}

namespace {

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
}

void write_json(const fs::path& dir, const std::string& name, const json& doc) {
    auto os = open_output(dir, name);
    os << doc.dump(2) << '\n';
}

json drift_json(const DriftReport& r) {
    json out = json::object();
    for (const auto& e : r.entries) out[e.quantity] = e.drift;
    return out;
}

std::string kind_name(DomainKind k) { return k == DomainKind::Circle ? "circle" : "line"; }

json base_params(const RunConfig& rc) {
    return json{{"domain", kind_name(rc.domain_kind)},
                {"length", rc.length},
                {"n_points", rc.n_points},
                {"nonlinearity", rc.nonlinearity().name()},
                {"dt", rc.dt},
                {"T", rc.T}};
}

json report(const std::string& name, const RunConfig& rc, json params, json metrics, bool pass) {
    return json{{"experiment", name}, {"params", std::move(params)}, {"metrics", std::move(metrics)},
                {"pass", pass},       {"config_hash", rc.config_hash}, {"seed", rc.seed}};
}

struct ExperimentOutcome {
    json report;
    bool pass = false;
};

ExperimentOutcome run_leakage(const RunConfig& rc, const fs::path& dir) {
    const SimConfig cfg = rc.sim_config();
    const BumpSpec bump = rc.bump();
    const LeakageSeries series = ucp_leakage(bump, cfg, rc.leakage_steps);
    if (series.blowup) throw Blowup(series.times.back(), series.times.back() + rc.dt);

    const bool zero_at_start = series.tail.front() == 0.0;
    bool positive_after = true;
    bool nondecreasing = true;
    for (std::size_t i = 1; i < series.tail.size(); ++i) {
        positive_after &= series.tail[i] > 1e-14 * series.initial_l1;
        nondecreasing &= series.tail[i] >= series.tail[i - 1];
    }
    const bool zero_data = bump.amplitude == 0.0;
    bool all_zero = true;
    for (double t : series.tail) all_zero &= t == 0.0;
    const bool pass = zero_data ? all_zero : (zero_at_start && positive_after && nondecreasing);

    auto os = open_output(dir, "ucp-leakage.csv");
    os << "# " << rc.provenance() << "\nt,tail\n" << std::setprecision(17);
    for (std::size_t i = 0; i < series.times.size(); ++i) os << series.times[i] << ',' << series.tail[i] << '\n';

    json params = base_params(rc);
    params["center"] = bump.center;
    params["radius"] = bump.radius;
    params["amplitude"] = bump.amplitude;
    params["steps"] = rc.leakage_steps;
    json metrics{{"initial_l1", series.initial_l1},
                 {"tail_t0", series.tail.front()},
                 {"tail_first_step", series.tail.size() > 1 ? series.tail[1] : 0.0},
                 {"tail_final", series.tail.back()},
                 {"positive_after_t0", positive_after},
                 {"nondecreasing", nondecreasing}};
    return {report("ucp-leakage", rc, params, metrics, pass), pass};
}

ExperimentOutcome run_segment(const RunConfig& rc, const fs::path& dir) {
    const Domain d = rc.domain();
    const KernelSpec spec(d, rc.kernel);
    const Nonlinearity f = rc.nonlinearity();
    const Field u = vanishing_field(d, rc.window_a, rc.window_b, rc.window_ramp, rc.initial.amplitude);
    const SegmentReport r = segment_identity_check(u, {0.0, rc.window_a, rc.window_b}, f, spec);

    const bool r1_ok = r.f_max > 0.0 ? r.r1 < 1e-10 * r.f_max : r.r1 == 0.0;
    const bool r2_ok = r.r2 < 1e-8;
    const bool positivity_ok = !r.sign_definite || (r.s > 0.0 && r.global_min > 0.0);
    const bool pass = r1_ok && r2_ok && positivity_ok;

    const Field inv = lambda_inv2(f.apply(u), spec);
    auto os = open_output(dir, "segment-identity.csv");
    os << "# " << rc.provenance() << "\nx,u,lambda_inv2_f\n" << std::setprecision(17);
    for (std::size_t j = 0; j < u.size(); ++j) os << d.point(j) << ',' << u[j] << ',' << inv[j] << '\n';

    json params = base_params(rc);
    params["window"] = {rc.window_a, rc.window_b};
    params["ramp"] = rc.window_ramp;
    json metrics{{"r1", r.r1},
                 {"r1_relative", r.f_max > 0.0 ? r.r1 / r.f_max : 0.0},
                 {"r2", r.r2},
                 {"s", r.s},
                 {"global_min", r.global_min},
                 {"f_max", r.f_max},
                 {"u_max_on_window", r.u_max_on_window},
                 {"sign_definite", r.sign_definite}};
    return {report("segment-identity", rc, params, metrics, pass), pass};
}

ExperimentOutcome run_vanish(const RunConfig& rc, const fs::path& dir) {
    const SimConfig cfg = rc.sim_config();
    const Field u0 = rc.initial_field(cfg.spec.domain());
    DiagnosticSeries series;
    const Trajectory traj =
        simulate(u0, cfg, [&](const SimState& s) { series.record(s, cfg.nonlinearity, cfg.spec); }, false);
    if (traj.blowup) throw Blowup(traj.lifespan, traj.final_state.t);
    const VanishSliceReport r = vanish_slice_check(u0, cfg, rc.epsilon, rc.retention);

    auto os = open_output(dir, "vanish-slice.csv");
    write_diagnostics_csv(os, series, rc.provenance());

    json params = base_params(rc);
    params["epsilon"] = rc.epsilon;
    params["retention"] = rc.retention;
    json metrics{{"initial_h1", r.initial_h1},     {"min_h1", r.min_h1},
                 {"max_h1", r.max_h1},             {"energy_drift", r.energy_drift},
                 {"numerically_zero", r.numerically_zero}};
    return {report("vanish-slice", rc, params, metrics, r.pass), r.pass};
}

ExperimentOutcome run_convergence(const RunConfig& rc, const fs::path& dir) {
    const SimConfig base = rc.sim_config();
    std::vector<std::size_t> ns;
    for (double n : rc.n_list) {
        if (n < Domain::kMinPoints || n != std::floor(n)) throw ConfigError("experiment.n_list entries must be integers >= 8");
        ns.push_back(static_cast<std::size_t>(n));
    }
    const ConvergenceTable table =
        convergence_study([&](const Domain& d) { return rc.initial_field(d); }, base, rc.dt_list, ns);

    const std::size_t n_dt = rc.dt_list.size();
    bool temporal_ok = true;
    bool all_zero = true;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        all_zero &= table.rows[i].energy_drift == 0.0;
        if ((i + 1) % n_dt == 0) continue;
        const double ratio = table.rows[i].energy_drift / table.rows[i + 1].energy_drift;
        temporal_ok &= ratio >= 8.0 && ratio <= 32.0;
    }
    bool spatial_ok = true;
    for (std::size_t k = 1; k < ns.size(); ++k) {
        const double coarse = table.rows[k * n_dt - 1].energy_drift;
        const double fine = table.rows[(k + 1) * n_dt - 1].energy_drift;
        spatial_ok &= fine <= 2.0 * coarse && coarse <= 2.0 * fine;
    }
    const bool pass = all_zero || (temporal_ok && spatial_ok);

    auto os = open_output(dir, "convergence.csv");
    os << "# " << rc.provenance() << "\ndt,n_points,energy_drift,final_h1,richardson,temporal_order\n"
       << std::setprecision(17);
    json rows = json::array();
    for (const auto& row : table.rows) {
        os << row.dt << ',' << row.n_points << ',' << row.energy_drift << ',' << row.final_h1 << ','
           << row.richardson << ',' << row.temporal_order << '\n';
        rows.push_back({{"dt", row.dt},
                        {"n_points", row.n_points},
                        {"energy_drift", row.energy_drift},
                        {"richardson", row.richardson},
                        {"temporal_order", row.temporal_order}});
    }
    json params = base_params(rc);
    params["dt_list"] = rc.dt_list;
    params["n_list"] = ns;
    json metrics{{"rows", rows}, {"temporal_ok", temporal_ok}, {"spatial_saturation_ok", spatial_ok}};
    return {report("convergence", rc, params, metrics, pass), pass};
}

}  // namespace

int cmd_simulate(const std::string& config_path, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    try {
        rc = RunConfig::load(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    const SimConfig cfg = rc.sim_config();
    const Field u0 = rc.initial_field(cfg.spec.domain());
    DiagnosticSeries series;
    const Trajectory traj =
        simulate(u0, cfg, [&](const SimState& s) { series.record(s, cfg.nonlinearity, cfg.spec); }, false);

    const fs::path dir = resolve_output_dir(rc);
    {
        auto os = open_output(dir, "diagnostics.csv");
        write_diagnostics_csv(os, series, rc.provenance());
    }
    {
        auto os = open_output(dir, "initial.csv");
        write_snapshot_csv(os, u0, rc.provenance());
    }
    {
        auto os = open_output(dir, "final.csv");
        write_snapshot_csv(os, traj.final_state.u, rc.provenance());
    }
    json drifts = series.size() >= 2 ? drift_json(drift_report(series, rc.drift_tolerance))
                                     : json{{"mass", 0.0}, {"energy", 0.0}, {"potential", 0.0}, {"h1norm", 0.0}};
    json summary{{"final_t", traj.final_state.t}, {"blowup", traj.blowup},       {"lifespan", traj.lifespan},
                 {"steps", traj.final_state.step_count}, {"drifts", drifts}, {"config_hash", rc.config_hash},
                 {"seed", rc.seed}};
    write_json(dir, "summary.json", summary);
    out << summary.dump(2) << '\n';
    if (traj.blowup) {
        err << "blowup: last valid time " << traj.lifespan << '\n';
        return kExitBlowup;
    }
    return kExitOk;
}

int cmd_verify_currents(const std::optional<std::string>& q, std::ostream& out, std::ostream& err) {
    using namespace sym;
    auto entry = [](const std::string& query, const Verification& v) {
        return json{{"query", query},
                    {"result", v.exact_zero ? "exact-zero" : "residual"},
                    {"residual_text", v.residual.to_string()}};
    };

    if (q) {
        try {
            const DiffPoly poly = parse(*q);
            const Verification v = verify_characteristic(poly);
            out << entry(*q, v).dump(2) << '\n';
            return v.exact_zero ? kExitOk : kExitVerification;
        } catch (const ParseError& e) {
            err << "parse error: " << e.what() << '\n';
            return kExitConfig;
        } catch (const std::invalid_argument& e) {
            err << "rejected: " << e.what() << '\n';
            return kExitConfig;
        }
    }

    const DiffPoly delta = bbm_operator();
    json verifications = json::array();
    json identities = json::array();
    bool all_ok = true;
    for (const auto& c : standard_currents()) {
        const Verification v = verify_characteristic(c.characteristic);
        verifications.push_back(entry(c.characteristic.to_string(), v));
        const DiffPoly mismatch = divergence(c.density, c.flux) - c.characteristic * delta;
        identities.push_back({{"current", c.name},
                              {"density", c.density.to_string()},
                              {"flux", c.flux.to_string()},
                              {"characteristic", c.characteristic.to_string()},
                              {"divergence_minus_q_delta", mismatch.to_string()},
                              {"holds", mismatch.is_zero()}});
        all_ok &= v.exact_zero && mismatch.is_zero();
    }

    // The plus-sign variant of the third characteristic, and the minus-sign variant of the mass flux.
    const Verification plus = verify_characteristic(parse("f(u) + u_tx"));
    const Verification minus = verify_characteristic(parse("f(u) - u_tx"));
    const DiffPoly alt_mass = divergence(parse("u"), parse("-u_tx - f(u)")) - delta;
    json sign_checks = json::array();
    sign_checks.push_back(entry("f(u) + u_tx", plus));
    sign_checks.push_back(entry("f(u) - u_tx", minus));
    sign_checks.push_back({{"query", "Div(u, -u_tx - f(u)) - Delta"},
                           {"result", alt_mass.is_zero() ? "exact-zero" : "residual"},
                           {"residual_text", alt_mass.to_string()}});

    json doc{{"equation", delta.to_string()},
             {"verifications", verifications},
             {"divergence_identities", identities},
             {"sign_adjudication", sign_checks},
             {"note", std::string("characteristic c3 term: Q = f(u) - u_tx is ") +
                          (minus.exact_zero ? "certified" : "NOT certified") + "; Q = f(u) + u_tx is " +
                          (plus.exact_zero ? "certified" : "NOT certified") + "; mass flux sign is -u_tx + f(u)"},
             {"all_certified", all_ok}};
    out << doc.dump(2) << '\n';
    return all_ok ? kExitOk : kExitVerification;
}

int cmd_experiment(const std::string& name, const std::string& config_path, std::ostream& out, std::ostream& err) {
    if (name != "ucp-leakage" && name != "segment-identity" && name != "vanish-slice" && name != "convergence") {
        err << "unknown experiment '" << name << "' (expected ucp-leakage, segment-identity, vanish-slice, convergence)\n";
        return kExitConfig;
    }
    try {
        const RunConfig rc = RunConfig::load(config_path);
        const fs::path dir = resolve_output_dir(rc);
        ExperimentOutcome outcome;
        if (name == "ucp-leakage") outcome = run_leakage(rc, dir);
        else if (name == "segment-identity") outcome = run_segment(rc, dir);
        else if (name == "vanish-slice") outcome = run_vanish(rc, dir);
        else outcome = run_convergence(rc, dir);
        write_json(dir, name + ".json", outcome.report);
        out << outcome.report.dump(2) << '\n';
        return outcome.pass ? kExitOk : kExitVerification;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Blowup& e) {
        err << e.what() << '\n';
        return kExitBlowup;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace bbm
