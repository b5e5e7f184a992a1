#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opcalc {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Operands equal to `-`
/// are read from `in`. Returns an ExitCode.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace opcalc
