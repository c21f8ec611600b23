#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage error, 3 data or
// parse error (including a non-minimizer input), 4 property violation.

#include <iosfwd>
#include <string>
#include <vector>

namespace eip {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitViolation = 4;

/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eip
