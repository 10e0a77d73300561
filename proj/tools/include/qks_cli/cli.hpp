#pragma once

#include <iosfwd>

namespace qks::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailedCheck = 1;  // verify found a disagreement
inline constexpr int kValidation = 2;
inline constexpr int kRegime = 3;
inline constexpr int kInternal = 4;

// Runs one command; tables go to `out` (or --out), messages to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qks::cli
