#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace soundsearch::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kErrorState = 2,
  kUsage = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace soundsearch::cli
