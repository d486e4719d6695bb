#pragma once

// Command-line front end. Every subcommand writes one table as CSV (or JSON
// with --json) preceded by `#` metadata lines.

#include <iosfwd>
#include <string>
#include <vector>

namespace waring::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 runtime error, 2 usage or validation error.
int run(int argc, const char* const* argv);

// Same, with explicit arguments (argv[0] excluded) and streams. Output goes
// to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace waring::cli
