#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdfp::cli {

// Runs the command line (args excludes the program name). Data goes to `out`
// unless --output is given; diagnostics go to `err`. Returns the exit code:
// 0 success, 1 input error, 2 config error, 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

}  // namespace hdfp::cli
