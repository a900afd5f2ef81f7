#pragma once

#include <iosfwd>

namespace apcong::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconsistent = 2;

/// Entry point behind the apcong executable; reports go to out, diagnostics
/// to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apcong::cli
