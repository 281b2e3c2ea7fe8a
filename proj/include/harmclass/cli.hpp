#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace harmclass::cli {

/// Exit codes: member/pass, legitimate negative verdict, usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmclass::cli
