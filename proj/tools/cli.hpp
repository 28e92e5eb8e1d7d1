#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kQuerySyntax = 2,
  kDataError = 3,
  kInternal = 4,
};

/// Runs one invocation. `args` excludes the program name. Output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Renders a query error with the offending line and a caret underline.
std::string caret_diagnostic(const std::string& text, std::size_t offset,
                             const std::string& message);

}  // namespace poq::cli
