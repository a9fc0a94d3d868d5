#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace secnet::cli {

/// Process exit codes. Disjoint by construction.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kIoError = 2,
  kInfeasible = 3,
  kStatisticalFailure = 4,
};

/// Environment variable naming a default configuration file.
inline constexpr const char* kConfigEnvVar = "SECNET_CONFIG";

/// Runs `secnet <command> [options]`; args[0] is the program name.
/// Result documents go to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secnet::cli
