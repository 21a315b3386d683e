#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rpd::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

// Runs `rpd-lab <args...>` (program name excluded), writing results to out
// and diagnostics to err.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rpd::cli
