#pragma once

#include <ostream>

namespace fqflow::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1,
    kExitUsage = 2,
    kExitGuard = 3,
};

/// Parses the command line and runs one of flow, stable, verify or ncount.
/// Reports go to `out` (or the --output file), diagnostics and timing to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fqflow::cli
