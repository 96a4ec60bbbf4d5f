#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prophet_lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

// Runs one command line (program name excluded). Results go to `out` unless
// --output names a file; diagnostics go to `err` as a single line.
// Returns 0 on success, 2 on validation failures, 3 on runtime or
// configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prophet_lab
