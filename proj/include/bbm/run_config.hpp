#pragma once

#include "bbm/evolution.hpp"
#include "bbm/experiments.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbm {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Flat `key = value` text with `[section]` headers and `#` comments. Keys are stored as
/// "section.key" ("key" before any section).
class ConfigFile {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static ConfigFile parse(const std::string& text);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const Entry* find(const std::string& key) const;
    std::vector<std::string> keys() const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

private:
    std::map<std::string, Entry> entries_;
};

enum class InitialKind { Zero, Sine, Bump, Soliton, Random };

struct InitialSpec {
    InitialKind kind = InitialKind::Zero;
    double amplitude = 0.1;
    int mode = 1;
    double center = 0.0;
    double radius = 5.0;
    BumpShape shape = BumpShape::CutoffExp;
    double speed = 1.5;
    int modes = 8;
};

struct RunConfig {
    DomainKind domain_kind = DomainKind::Circle;
    double length = 1.0;  // circle length, or the half-width L of a Line domain
    std::size_t n_points = 256;

    std::string nonlinearity_name = "bbm";
    std::vector<double> nonlinearity_coefficients;  // overrides the name when non-empty

    double dt = 1e-3;
    double T = 1.0;
    double blowup_threshold = 1e6;
    long callback_stride = 1;
    KernelMethod kernel = KernelMethod::SpectralMultiplier;

    InitialSpec initial;

    // experiment parameters
    long leakage_steps = 100;
    double window_a = 0.4;
    double window_b = 0.6;
    double window_ramp = 0.15;
    double epsilon = 1e-12;
    double retention = 0.9;
    double drift_tolerance = 1e-8;
    std::vector<double> dt_list{2e-2, 1e-2, 5e-3};
    std::vector<double> n_list{64, 128};

    std::string output_dir = "out";
    std::uint64_t seed = 0;
    std::string config_hash;

    /// Parses and validates; ConfigError carries the offending line when known.
    static RunConfig from_text(const std::string& text);
    static RunConfig load(const std::string& path);

    Domain domain() const;
    Nonlinearity nonlinearity() const;
    SimConfig sim_config() const;
    Field initial_field(const Domain& domain) const;
    BumpSpec bump() const;
    /// Header comment embedded in every output file.
    std::string provenance() const;
};

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace bbm
