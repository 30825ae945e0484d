#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tqft::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,  // a theorem check fails on this input
  kInputError = 2,         // unreadable or malformed file, bad expression, bad usage
  kInternalError = 3,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` as text, or as JSON under --json; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tqft::cli
