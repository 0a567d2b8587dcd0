#pragma once

#include <ostream>

namespace relhh {

enum ExitCode : int { kExitOk = 0, kExitInvariantFailure = 1, kExitInputError = 2 };

/// Entry point of the `relhh` command line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relhh
