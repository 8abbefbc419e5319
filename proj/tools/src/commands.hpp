#pragma once

#include <iosfwd>

namespace locmst::cli {

/// Exit codes of the locmst tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitConfig = 2;

/// Parses argv and runs one subcommand.  Results go to `out` unless an
/// --out path is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locmst::cli
