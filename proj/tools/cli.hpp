#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toda::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kClosureFailure = 2,
  kIntegrationFailure = 3,
  kMalformedInput = 4,
  kResidualViolation = 5,
};

/// Runs the command line; data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toda::cli
