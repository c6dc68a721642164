#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seedgraph::cli {

/// `internal` signals a broken internal invariant, never bad input.
enum ExitCode : int { ok = 0, refuted = 1, usage = 2, budget = 3, internal = 70 };

/// Runs the command line `args` (program name excluded). Output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seedgraph::cli
