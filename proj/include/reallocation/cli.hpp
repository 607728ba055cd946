#pragma once

#include <ostream>

namespace reallocation {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,      // schedule infeasible, or a correspondence check failed
  kExitPrecondition = 2,  // input violates an algorithm's preconditions
  kExitNoSolution = 3,    // infeasible within the horizon, budget exhausted, rounding stuck
  kExitDocument = 4,      // unreadable or mismatched documents
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reallocation
