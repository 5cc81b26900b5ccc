#pragma once

#include <ostream>

namespace ergm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadArgs = 2;
inline constexpr int kExitNumeric = 3;

// Entire command line front end; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ergm::cli
