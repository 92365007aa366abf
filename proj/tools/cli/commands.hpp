#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thinopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "THINOPT_OUT_DIR";

// Runs the command line `args` (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thinopt::cli
