#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracperc::cli {

enum ExitCode : int { Ok = 0, InputFailure = 2, Ambiguity = 3, Invariant = 4 };

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics and timings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracperc::cli
