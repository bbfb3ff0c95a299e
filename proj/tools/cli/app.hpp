#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torelli::cli {

// Exit codes. The report's "status" field determines the code through
// exit_code_for(); nothing else does.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kUnsupported = 3,
  kNeedsExtension = 4,
  kInternal = 5,
};

/// "ok", "usage_error", "unsupported", "needs_extension", "internal_error".
int exit_code_for(const std::string& status);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; `in` is read when --poly is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace torelli::cli
