#pragma once

#include <ostream>

namespace subdiv {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitExpectationFailed = 1,
    kExitInvalidInput = 2,  // malformed JSON (with line/column), bad schema or arguments
    kExitBlowup = 3,
    kExitInternal = 4,
};

/// Entry point of the `subdiv` tool; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subdiv
