#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lelm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the `lelm` binary and the tests. `args` excludes
/// the program name. Returns the process exit code; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lelm::cli
