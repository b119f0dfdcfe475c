#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace buchi::cli {

/// Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input error.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buchi::cli
