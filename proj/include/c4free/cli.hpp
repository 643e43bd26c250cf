#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace c4free {

enum ExitCode : int {
  kExitOk = 0,        // success, or the checked set is C4-free
  kExitViolation = 1, // a four-cycle was found, or V > 0 at the target
  kExitUsage = 2,
  kExitIo = 3,        // I/O or validation failure
};

// Environment variable holding the worker-thread count for search campaigns.
inline constexpr const char* kThreadsEnv = "C4FREE_THREADS";

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace c4free
