#pragma once

#include <ostream>

namespace casimir::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_validation = 2,
  exit_convergence = 3,
  exit_verification = 4,
};

/// Entry point behind `casimir`; subcommands correlator, variance, sweep,
/// verify and moddel. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace casimir::cli
