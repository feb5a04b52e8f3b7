#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrdmd::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kUsageError = 2,
  kNumericalGuard = 3,
};

/// Runs the command line front end. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrdmd::cli
