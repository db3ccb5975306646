#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dqw::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kNumericalDrift = 3,
    kInfeasible = 4,
};

/// Runs one subcommand (run, average, exact, moments, coeffs, variance).
/// `args` excludes the program name. Results go to --out when given,
/// otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "10..100", "10..100:10" or "10,20,50". Throws ConfigError.
std::vector<std::size_t> parse_n_list(const std::string& text);

}  // namespace dqw::cli
