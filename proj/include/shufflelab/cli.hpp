#pragma once

#include <iosfwd>

namespace shufflelab::cli {

/// Exit codes: 0 ok, 1 internal error, 2 bad input, 3 budget exceeded,
/// 4 a mathematical verdict failed.
enum ExitCode : int { kOk = 0, kInternal = 1, kBadInput = 2, kBudget = 3, kVerdictFail = 4 };

/// Runs the command line; data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shufflelab::cli
