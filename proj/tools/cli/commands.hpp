#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace renyikit::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kConfigError = 2,
  kCapError = 3,
  kVerificationFailed = 4,
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Comma-separated values; a token "a:b:step" expands to a, a+step, ..., <= b.
/// Orders accept "inf".
std::vector<double> parse_grid(const std::string& text, const std::string& what,
                               bool allow_inf = true);

}  // namespace renyikit::cli
