#pragma once

#include <iosfwd>

namespace sparsepen::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericError = 3 };

/// Runs one subcommand (fit, path, cv, simulate, bench). Results go to `out` unless
/// --out names a file; warnings and errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sparsepen::cli
