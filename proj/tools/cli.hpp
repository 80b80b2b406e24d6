#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dlsim::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kComputationFailure = 2,
  kNoSolution = 3,
  kResourceGuard = 4,
  kInputError = 5,  // unreadable or malformed input file
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlsim::cli
