#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace readout::sweep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitNumeric = 4;

/// Command-line entry point. `args` excludes the program name. Tables go to
/// `out` unless an output path is configured; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace readout::sweep
