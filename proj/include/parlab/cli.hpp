#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,    // bad flags, bad values, unknown subcommand
  kExitRuntime = 2,  // convergence failure, oracle mismatch, I/O or file format
};

/// Environment variable naming the directory `bench` writes to when --out is
/// not given.
inline constexpr const char* kOutputDirEnv = "PARLAB_OUTPUT_DIR";

/// Parses "1,2,4", "a..b" (powers of two within [a, b]) or a mix of both.
/// Items may also be written 2^k.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

/// Entry point of the `parlab` tool. `args` excludes the program name.
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace parlab
