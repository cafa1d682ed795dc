#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coarsepw::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 2,
  kBudgetExceeded = 3,
  kIoError = 4,
};

/// Runs one command line (args excludes the program name). JSON goes to `out` unless
/// --json-out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsepw::cli
