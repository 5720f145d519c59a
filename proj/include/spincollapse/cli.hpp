#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace spincollapse::cli {

inline constexpr std::string_view kToolName = "spincollapse";
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,
  kInfeasibleOracle = 3,
};

/// Runs one command line (without the program name). Documents go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spincollapse::cli
