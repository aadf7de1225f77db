#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quillen::cli {

enum ExitCode : int {
  kOk = 0,
  kObstruction = 1,
  kInvalidInput = 2,
  kBudgetExceeded = 3,
};

/// Runs one invocation of the `quillen` tool. The report goes to `out`
/// (and to a file when requested), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quillen::cli
