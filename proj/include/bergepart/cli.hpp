#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bergepart::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  /// Violation, bound gap or incomplete search; the run itself was valid.
  kFinding = 1,
  kUsage = 2,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics and the grammar to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bergepart::cli
