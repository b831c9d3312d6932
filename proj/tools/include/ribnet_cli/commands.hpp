#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ribnet::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kBadInput = 2 };

struct Environment {
  std::optional<std::string> tolerance;  // RIBNET_TOLERANCE
};
Environment process_environment();

// Runs the tool on `args` (without the program name). Structured text goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env);

}  // namespace ribnet::cli
