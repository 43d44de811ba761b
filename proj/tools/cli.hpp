#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nkv::cli {

enum ExitCode : int { Ok = 0, AssertionFailed = 1, BadInput = 2, Internal = 3 };

/// Runs one command line (args[0] is the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nkv::cli
