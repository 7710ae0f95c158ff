#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace resiring::cli {

enum ExitCode : int {
  kOk = 0,
  kFalseVerdict = 1,
  kUsageError = 2,
  kCapExceeded = 3,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Captured {
  int exit_code;
  std::string out;
  std::string err;
};

Captured run_captured(const std::vector<std::string>& args);

}  // namespace resiring::cli
