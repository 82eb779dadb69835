#pragma once

#include <string>
#include <vector>

namespace tkl::cli {

// Runs one CLI invocation. Returns the process exit code:
//   0  success, all checks clean
//   1  a verification mismatch or internal cross-check failure
//   2  usage error (bad flags, inapplicable modulus, reducible override, ...)
int run(int argc, const char* const argv[]);
int run(const std::vector<std::string>& args);  // args exclude the program name

}  // namespace tkl::cli
