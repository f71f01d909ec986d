#ifndef RCBOUND_CLI_HPP
#define RCBOUND_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rcbound/bounds.hpp"

namespace rcbound {

// Parsed command-line configuration. All randomized commands require an
// explicit seed; there is no time-based default.
struct RunConfig {
    enum class Command { Analyze, Bounds, Prefactor, Simulate, Spectrum };

    Command command = Command::Analyze;
    std::string scenario_path;
    std::optional<double> rate_override;  // nats unless rates_in_bits
    bool rates_in_bits = false;
    std::vector<int> n_grid;
    long long trials = 100000;
    std::optional<std::uint64_t> seed;
    std::optional<double> s_override;
    std::optional<double> delta_override;
    std::vector<BoundKind> kinds{BoundKind::RCU_EXACT};
    bool use_mc = false;       // bounds/prefactor: Monte Carlo RCU instead of exact
    double fit_tol = 0.15;
    std::string spectrum_kind = "forward";
    int spectrum_y = 0;
    bool csv_output = false;   // simulate: CSV row instead of JSON
    std::string out_path;      // empty: stdout
    RcuBudget budget;
};

// Executes one command; writes results to `out` and diagnostics to `err`.
// Exit codes: 0 success, 1 I/O, 2 validation, 3 budget.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rcbound

#endif
