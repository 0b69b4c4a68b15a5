#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mesoc::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 2,
  exit_dimension = 3,
  exit_no_convergence = 4,
  exit_verification = 5,
};

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mesoc::cli
