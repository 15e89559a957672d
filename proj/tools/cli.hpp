#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "topicforge/error.hpp"

namespace topicforge::cli {

// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
  kOk = 0,
  kIo = 2,
  kEmpty = 3,
  kUnknown = 4,
  kInvalid = 5,
};

int exit_code_for(ErrorCode code) noexcept;

/// Runs `topicforge <args...>` (args exclude the program name) writing to the
/// given streams. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topicforge::cli
