#pragma once
// Command-line front end. run() takes the arguments after the program name.

#include <iosfwd>
#include <string>
#include <vector>

namespace zcp2::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitConfig = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zcp2::cli
