// cli.hpp
//
// Entry point of the ladderlab tool, callable in-process.
//
// Exit codes: 0 ok, 1 numerical failure, 2 domain or usage error,
// 3 cache error, 4 trend violation in suite mode (experiment all).

#pragma once

#include <iosfwd>

namespace ladderlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitCache = 3;
inline constexpr int kExitTrend = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ladderlab::cli
