#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halfgain {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitDivergence = 3 };

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfgain
