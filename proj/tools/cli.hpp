#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maxrange::cli {

enum ExitCode : int { kOk = 0, kInfeasible = 1, kConfigInvalid = 2 };

/// Environment variable consulted when --config is not given.
inline constexpr const char* kConfigEnv = "MAXRANGE_CONFIG";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxrange::cli
