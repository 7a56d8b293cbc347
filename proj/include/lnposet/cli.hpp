#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lnposet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOverflow = 3;

/// Command-line entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lnposet
