#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace restart_rank::cli {

// Process exit statuses.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kSolverError = 3,
};

// Entry point behind the `restart-rank` executable. `args` excludes the
// program name. Results go to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace restart_rank::cli
