#pragma once

// Command-line dispatcher. Exit codes: 0 success, 1 usage or configuration
// error, 2 when a check finds a violated hypothesis or a computation fails to
// reach its goal (non-converged critical point search, failed lemma check).

#include <iosfwd>
#include <string>
#include <vector>

namespace vortex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFinding = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace vortex::cli
