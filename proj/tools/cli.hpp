#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsloc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,  // bad flags, schema/value errors, shape mismatches
  kIoError = 2,
};

// Runs the command line `args` (without the program name). Results go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsloc::cli
