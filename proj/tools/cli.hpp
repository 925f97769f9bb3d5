#pragma once

#include <ostream>

namespace lambdamu::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kTypeError = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCycleOrFail = 3;
inline constexpr int kFuel = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lambdamu::cli
