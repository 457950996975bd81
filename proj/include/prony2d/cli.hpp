#pragma once

#include <string>
#include <vector>

namespace prony2d::cli {

struct CommandResult {
  int exit_code = 0;  // 0 success, 1 domain error, 2 usage error
  std::vector<std::string> outputs;
  std::string summary;
  /// Primary output when no --out path was given, or help text.
  std::string stdout_text;
};

/// args excludes the program name. Subcommands: gen-polygon, sample, recover,
/// verify-uniqueness, oracle-check, plot.
CommandResult run(const std::vector<std::string>& args);

}  // namespace prony2d::cli
