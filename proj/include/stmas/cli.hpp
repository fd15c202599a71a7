#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stmas {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

/// Runs `stmas-sim` with argv[1..] in `args`. Metrics go to `out` as
/// key=value lines; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace stmas
