#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cou::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). The JSON report
/// or CSV goes to `out`; diagnostics and --pretty tables go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cou::cli
