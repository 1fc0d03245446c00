#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rpm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNotConverged = 2,
  kCheckFailed = 3,
};

/// Runs the `rpade` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rpm::cli
