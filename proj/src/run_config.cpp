#include "bbm/run_config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace bbm {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "seed",
        "run.seed",
        "domain.kind",
        "domain.length",
        "domain.n_points",
        "nonlinearity.name",
        "nonlinearity.coefficients",
        "integrator.dt",
        "integrator.T",
        "integrator.blowup_threshold",
        "integrator.callback_stride",
        "kernel.method",
        "initial.type",
        "initial.amplitude",
        "initial.mode",
        "initial.center",
        "initial.radius",
        "initial.shape",
        "initial.speed",
        "initial.modes",
        "experiment.steps",
        "experiment.window_a",
        "experiment.window_b",
        "experiment.ramp",
        "experiment.epsilon",
        "experiment.retention",
        "experiment.drift_tolerance",
        "experiment.dt_list",
        "experiment.n_list",
        "output.dir",
    };
    return keys;
}

double parse_double(const std::string& key, const ConfigFile::Entry& e) {
    const std::string v = trim(e.value);
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError(key + ": expected a number, got '" + e.value + "'", e.line);
    return d;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        if (key.empty()) throw ConfigError("missing key before '='", line_no);
        const std::string full = section.empty() ? key : section + "." + key;
        if (!known_keys().count(full)) throw ConfigError("unknown key '" + full + "'", line_no);
        if (cfg.entries_.count(full)) throw ConfigError("duplicate key '" + full + "'", line_no);
        cfg.entries_[full] = Entry{trim(std::string_view(line).substr(eq + 1)), line_no};
    }
    return cfg;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> ConfigFile::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, e] : entries_) out.push_back(k);
    return out;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    const Entry* e = find(key);
    return e ? parse_double(key, *e) : fallback;
}

long ConfigFile::get_long(const std::string& key, long fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    const double d = parse_double(key, *e);
    if (d != std::floor(d) || std::abs(d) > 9e15) throw ConfigError(key + ": expected an integer", e->line);
    return static_cast<long>(d);
}

std::vector<double> ConfigFile::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, Entry{item, e->line}));
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list", e->line);
    return out;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig RunConfig::from_text(const std::string& text) {
    const ConfigFile cfg = ConfigFile::parse(text);
    RunConfig rc;
    rc.config_hash = fnv1a_hex(text);
    auto line_of = [&](const std::string& key) {
        const auto* e = cfg.find(key);
        return e ? e->line : 0;
    };
    auto fail = [&](const std::string& key, const std::string& msg) -> void {
        throw ConfigError(key + " " + msg, line_of(key));
    };

    const std::string kind = cfg.get_string("domain.kind", "circle");
    if (kind == "circle") rc.domain_kind = DomainKind::Circle;
    else if (kind == "line") rc.domain_kind = DomainKind::Line;
    else fail("domain.kind", "must be 'circle' or 'line', got '" + kind + "'");
    rc.length = cfg.get_double("domain.length", rc.domain_kind == DomainKind::Circle ? 1.0 : 40.0);
    if (!(rc.length > 0.0)) fail("domain.length", "must be positive");
    const long n = cfg.get_long("domain.n_points", 256);
    if (n < static_cast<long>(Domain::kMinPoints) || n % 2 != 0) fail("domain.n_points", "must be an even integer >= 8");
    rc.n_points = static_cast<std::size_t>(n);

    rc.nonlinearity_name = cfg.get_string("nonlinearity.name", "bbm");
    rc.nonlinearity_coefficients = cfg.get_doubles("nonlinearity.coefficients", {});
    try {
        (void)rc.nonlinearity();
    } catch (const std::invalid_argument& e) {
        const std::string key = rc.nonlinearity_coefficients.empty() ? "nonlinearity.name" : "nonlinearity.coefficients";
        fail(key, std::string("invalid: ") + e.what());
    }

    rc.dt = cfg.get_double("integrator.dt", rc.dt);
    if (!(rc.dt > 0.0)) fail("integrator.dt", "must be positive");
    rc.T = cfg.get_double("integrator.T", rc.T);
    if (!(rc.T > 0.0)) fail("integrator.T", "must be positive");
    if (!(rc.dt < rc.T)) fail("integrator.dt", "must be smaller than integrator.T");
    rc.blowup_threshold = cfg.get_double("integrator.blowup_threshold", rc.blowup_threshold);
    if (!(rc.blowup_threshold > 0.0)) fail("integrator.blowup_threshold", "must be positive");
    rc.callback_stride = cfg.get_long("integrator.callback_stride", rc.callback_stride);
    if (rc.callback_stride < 1) fail("integrator.callback_stride", "must be at least 1");

    const std::string method = cfg.get_string("kernel.method", "spectral");
    if (method == "spectral") rc.kernel = KernelMethod::SpectralMultiplier;
    else if (method == "direct") rc.kernel = KernelMethod::DirectConvolution;
    else if (method == "expfilter") rc.kernel = KernelMethod::ExpFilter;
    else fail("kernel.method", "must be spectral, direct or expfilter");
    if (rc.kernel == KernelMethod::ExpFilter && rc.domain_kind != DomainKind::Line)
        fail("kernel.method", "expfilter requires domain.kind = line");

    const std::string type = cfg.get_string("initial.type", "zero");
    auto& init = rc.initial;
    if (type == "zero") init.kind = InitialKind::Zero;
    else if (type == "sine") init.kind = InitialKind::Sine;
    else if (type == "bump") init.kind = InitialKind::Bump;
    else if (type == "soliton") init.kind = InitialKind::Soliton;
    else if (type == "random") init.kind = InitialKind::Random;
    else fail("initial.type", "must be zero, sine, bump, soliton or random");
    init.amplitude = cfg.get_double("initial.amplitude", init.amplitude);
    init.mode = static_cast<int>(cfg.get_long("initial.mode", init.mode));
    init.center = cfg.get_double("initial.center", init.center);
    init.radius = cfg.get_double("initial.radius", init.radius);
    init.speed = cfg.get_double("initial.speed", init.speed);
    init.modes = static_cast<int>(cfg.get_long("initial.modes", init.modes));
    const std::string shape = cfg.get_string("initial.shape", "cutoff_exp");
    if (shape == "cutoff_exp") init.shape = BumpShape::CutoffExp;
    else if (shape == "raised_cosine") init.shape = BumpShape::RaisedCosine;
    else fail("initial.shape", "must be cutoff_exp or raised_cosine");
    if (init.kind == InitialKind::Bump && !(init.radius > 0.0)) fail("initial.radius", "must be positive");
    if (init.kind == InitialKind::Soliton && !(init.speed > 1.0)) fail("initial.speed", "must exceed 1");
    if (init.kind == InitialKind::Random && init.modes < 1) fail("initial.modes", "must be at least 1");

    rc.leakage_steps = cfg.get_long("experiment.steps", rc.leakage_steps);
    if (rc.leakage_steps < 1) fail("experiment.steps", "must be at least 1");
    rc.window_a = cfg.get_double("experiment.window_a", rc.window_a);
    rc.window_b = cfg.get_double("experiment.window_b", rc.window_b);
    if (!(rc.window_a < rc.window_b)) fail("experiment.window_b", "must exceed experiment.window_a");
    rc.window_ramp = cfg.get_double("experiment.ramp", rc.window_ramp);
    if (!(rc.window_ramp > 0.0)) fail("experiment.ramp", "must be positive");
    rc.epsilon = cfg.get_double("experiment.epsilon", rc.epsilon);
    rc.retention = cfg.get_double("experiment.retention", rc.retention);
    rc.drift_tolerance = cfg.get_double("experiment.drift_tolerance", rc.drift_tolerance);
    rc.dt_list = cfg.get_doubles("experiment.dt_list", rc.dt_list);
    rc.n_list = cfg.get_doubles("experiment.n_list", rc.n_list);
    if (!std::is_sorted(rc.dt_list.rbegin(), rc.dt_list.rend())) fail("experiment.dt_list", "must be descending");
    if (!std::is_sorted(rc.n_list.begin(), rc.n_list.end())) fail("experiment.n_list", "must be ascending");

    rc.output_dir = cfg.get_string("output.dir", rc.output_dir);
    const std::string seed_key = cfg.has("run.seed") ? "run.seed" : "seed";
    const long seed = cfg.get_long(seed_key, 0);
    if (seed < 0) fail(seed_key, "must be nonnegative");
    rc.seed = static_cast<std::uint64_t>(seed);

    // Cross-field checks that need the assembled objects.
    try {
        const Domain d = rc.domain();
        const Field u0 = rc.initial_field(d);
        if (!(rc.blowup_threshold > u0.max_abs()))
            fail("integrator.blowup_threshold", "must exceed the initial ||u||_inf");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("initial data: ") + e.what(), line_of("initial.type"));
    }
    return rc;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

Domain RunConfig::domain() const { return make_domain(domain_kind, length, n_points); }

Nonlinearity RunConfig::nonlinearity() const {
    if (!nonlinearity_coefficients.empty()) return Nonlinearity::polynomial(nonlinearity_coefficients);
    return Nonlinearity::builtin(nonlinearity_name);
}

SimConfig RunConfig::sim_config() const {
    return SimConfig{T, dt, blowup_threshold, KernelSpec(domain(), kernel), nonlinearity(), callback_stride};
}

BumpSpec RunConfig::bump() const { return {initial.center, initial.radius, initial.amplitude, initial.shape}; }

Field RunConfig::initial_field(const Domain& d) const {
    switch (initial.kind) {
    case InitialKind::Zero: return Field::zeros(d);
    case InitialKind::Sine: {
        const double kappa = d.wavenumber(initial.mode);
        return Field::sample(d, [&](double x) { return initial.amplitude * std::sin(kappa * (x - d.left())); });
    }
    case InitialKind::Bump: return make_bump(d, bump());
    case InitialKind::Soliton:
        return Field::sample(d, [&](double x) { return solitary_wave(x, 0.0, initial.speed, initial.center); });
    case InitialKind::Random: return random_smooth_field(d, seed, initial.modes, initial.amplitude);
    }
    throw std::logic_error("unreachable initial kind");
}

std::string RunConfig::provenance() const {
    return "config_hash=" + config_hash + " seed=" + std::to_string(seed);
}

}  // namespace bbm
