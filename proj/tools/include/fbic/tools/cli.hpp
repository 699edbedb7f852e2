#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fbic::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `fbic` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 when an acceptance or self-check fails, 2 on
/// usage, validation and domain errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fbic::tools
