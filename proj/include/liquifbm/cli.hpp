#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace liquifbm {

// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kGateFailed = 1, kConfigError = 2, kNumericalError = 3 };

// Runs one command (args excludes the program name). Results go to `out`
// unless --out names a file; diagnostics and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lag k in [-max_lag, max_lag] maximizing corr(a_i, b_{i+k}); positive k means a leads b.
int lead_lag(const std::vector<double>& a, const std::vector<double>& b, int max_lag);

}  // namespace liquifbm
