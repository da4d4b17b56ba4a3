#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pasp {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // bad arguments, parse errors, out-of-range specs, I/O errors
  kExitInconsistentWorld = 2,
  kExitUndefinedConditional = 3,
  kExitNoLearnableFacts = 4,
  kExitCapExceeded = 5,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pasp
