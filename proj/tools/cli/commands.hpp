#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace balnum::cli {

// Exit status contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitHardFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

// Runs one CLI invocation. `args` excludes the program name. All normal
// output goes to `out`, diagnostics and warnings to `err`; the return value
// is the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace balnum::cli
