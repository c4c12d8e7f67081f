#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace psc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kVerifyFailed = 2,
  kResourceCap = 3,
};

// Runs psc-lab with `args` (without the program name), writing records to
// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psc::cli
