#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ghd::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kNotExact = 2,
  kParseFailed = 3,
  kCapExceeded = 4,
};

/// Runs one command. `args[0]` is the program name. Results go to `out`;
/// failures are reported on `err` as a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghd::cli
