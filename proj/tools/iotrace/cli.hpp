#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iotrace::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kRuntime = 2,
  kTargetFailed = 3,
};

/// Runs one `iotrace` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iotrace::cli
