#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oplab::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kInvalidParameters = 2,
  kDivergence = 3,
  kAccuracy = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oplab::cli
