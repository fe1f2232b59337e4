#pragma once

// Command-line front end: generate | segment | eval | report.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace subseg::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,    ///< bad flags or parameter values
  kParseError = 3,     ///< unreadable or malformed input file
  kPipelineError = 4,  ///< the computation itself failed
};

/// Worker count: hardware concurrency, capped by SUBSEG_THREADS when set.
/// Throws InvalidArgument for a value that is not a positive integer.
int thread_budget(const std::optional<std::string>& env_value);

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subseg::cli
