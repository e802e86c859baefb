#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlqm::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Runs `nlqm <command> [flags]` with the given arguments (argv[0] excluded).
/// Data goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlqm::cli
