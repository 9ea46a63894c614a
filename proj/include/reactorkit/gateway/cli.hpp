#pragma once

#include <iosfwd>

namespace reactorkit::gateway {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// The `reactorkit` command line. Subcommands: serve, counter, timer, prime, lab.
/// Returns 0 on success, 1 when a scripted assertion fails, 2 on bad usage or input.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace reactorkit::gateway
