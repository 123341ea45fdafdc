#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hexpst::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kPass = 0,
  kSpecError = 2,
  kStructureViolation = 3,
  kUnroutable = 4,
  kVerdictFail = 5,
};

/// Environment variable overriding the default modulus tolerance.
inline constexpr const char* kToleranceEnv = "HEXPST_TOL";

/// Runs `hexpst <args...>` (args exclude the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hexpst::cli
