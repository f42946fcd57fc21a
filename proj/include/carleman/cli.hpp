#ifndef CARLEMAN_CLI_HPP
#define CARLEMAN_CLI_HPP

#include <ostream>

namespace carleman {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitNumerical = 3 };

// Command-line front end. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace carleman

#endif  // CARLEMAN_CLI_HPP
