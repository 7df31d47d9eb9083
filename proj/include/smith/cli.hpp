#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smith {

/// Exit statuses of the `smith` command.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitNotRegular = 2,
  kExitVerifyFailed = 3,
  kExitParse = 4,
  kExitBadArgs = 5,
};

/// Runs the command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smith
