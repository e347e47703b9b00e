#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace backlund::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr const char* kToleranceEnv = "BACKLUND_TOL";

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace backlund::cli
