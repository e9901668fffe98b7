#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace urnlda::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitCheckFailed = 3;

/// Runs one subcommand. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Reads `key = value` lines into command-line arguments (`--key value`).
/// Blank lines, `#` comments and keys starting with `run.` are skipped.
/// Throws std::invalid_argument on a line without `=`.
std::vector<std::string> config_file_args(const std::string& path);

}  // namespace urnlda::cli
