#pragma once

#include <iosfwd>

namespace valveflow {

/// Exit codes: 0 ok, 2 usage or configuration error, 3 domain error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Subcommands riemann, classify, sweep and simulate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace valveflow
