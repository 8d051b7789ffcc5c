#pragma once

#include <iosfwd>

namespace dtc::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // oracle mismatch, manifest verification failure
inline constexpr int kConfigError = 2;
inline constexpr int kNumericError = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dtc::cli
