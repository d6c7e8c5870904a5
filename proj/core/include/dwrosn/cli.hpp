#pragma once

#include <iosfwd>

namespace dwrosn {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // unexpected internal error
  kExitUsage = 2,       // bad flags or malformed config
  kExitInfeasible = 3,  // no connected topology could be built
  kExitIo = 4,
};

// Subcommands: propagate, census, assign, rwa, experiment. On failure one
// line `error: <kind>: <message>` goes to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwrosn
