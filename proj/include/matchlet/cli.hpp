#ifndef MATCHLET_CLI_HPP
#define MATCHLET_CLI_HPP

#include <iosfwd>

namespace matchlet {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitAccepted = 0,
    kExitRejected = 1,
    kExitInputError = 2,
};

/// Runs `matchlet <subcommand> ...`; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace matchlet

#endif  // MATCHLET_CLI_HPP
