#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace clrrt::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kUsageError = 2,
  kStageFailure = 3,
  kOutputError = 4,
};

/// Parses "1-20", "3", "1,4,9-11" into a seed list. Throws ConfigError.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Runs the clrrt command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clrrt::cli
