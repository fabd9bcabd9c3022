#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcc {

inline constexpr const char* kToolName = "tcc";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of run().
inline constexpr int kExitOk = 0;
/// Usage errors, unreadable or malformed input, cap violations.
inline constexpr int kExitUsage = 1;
/// Computed but failed: tolerance misses, failed validation, homology obstruction.
inline constexpr int kExitFailed = 2;

/// Runs one command line (without the program name). The result envelope goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcc
