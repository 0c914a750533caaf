#pragma once

#include <iosfwd>

namespace pirmax::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand; output goes to out/err, never to std::cout directly.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pirmax::cli
