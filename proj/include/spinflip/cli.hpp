#pragma once

#include <iosfwd>

namespace spinflip {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRegime = 3;

/// Subcommands: simulate, scan, resonance, trajectory, elliptic, frame.
/// Errors go to `err` as `code: message` lines.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinflip
