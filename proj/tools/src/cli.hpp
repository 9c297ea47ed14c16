#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pseudolinear::cli {

/// Runs the command line `args` (without the program name). Summaries and
/// records go to `out`, diagnostics to `err`. Returns the process exit code:
/// 0 success, 1 verification failure, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pseudolinear::cli
