#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace bbm {

struct RunConfig;

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitBlowup = 2, kExitVerification = 3 };

/// Environment variable that overrides `[output] dir`.
inline constexpr const char* kOutputDirEnv = "BBM_LAB_OUT_DIR";

std::filesystem::path resolve_output_dir(const RunConfig& config);

/// Writes diagnostics.csv, initial.csv, final.csv and summary.json.
int cmd_simulate(const std::string& config_path, std::ostream& out, std::ostream& err);

/// Without a query: certifies the three standard characteristics and their divergence
/// identities. With one: verifies only that Q. Prints a JSON report to `out`.
int cmd_verify_currents(const std::optional<std::string>& q, std::ostream& out, std::ostream& err);

/// name in {ucp-leakage, segment-identity, vanish-slice, convergence}. Writes
/// <name>.json and <name>.csv.
int cmd_experiment(const std::string& name, const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace bbm
