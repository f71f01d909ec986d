// rcbound: error exponents, finite-blocklength bounds and prefactor
// regression for discrete memoryless channels under max-metric decoding.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcbound/cli.hpp"

namespace {

std::vector<rcbound::BoundKind> parse_kinds(const std::vector<std::string>& names) {
    std::vector<rcbound::BoundKind> kinds;
    for (const std::string& k : names) {
        if (k == "rcu")
            kinds.push_back(rcbound::BoundKind::RCU_EXACT);
        else if (k == "rcu_mc")
            kinds.push_back(rcbound::BoundKind::RCU_MC);
        else if (k == "gallager")
            kinds.push_back(rcbound::BoundKind::GALLAGER);
        else if (k == "shape")
            kinds.push_back(rcbound::BoundKind::THEOREM_SHAPE);
        else if (k == "all") {
            kinds = {rcbound::BoundKind::RCU_EXACT, rcbound::BoundKind::GALLAGER,
                     rcbound::BoundKind::THEOREM_SHAPE};
        } else {
            throw CLI::ValidationError("--kind", "unknown bound kind: " + k);
        }
    }
    return kinds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-coding exponents and finite-blocklength bounds for DMCs"};
    app.require_subcommand(1);

    rcbound::RunConfig cfg;
    double rate = 0.0;
    bool have_rate = false;
    double s_val = 0.0;
    bool have_s = false;
    double delta_val = 0.0;
    bool have_delta = false;
    std::uint64_t seed_val = 0;
    bool have_seed = false;
    std::vector<std::string> kind_names;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("scenario", cfg.scenario_path, "scenario JSON file")->required();
        sub->add_option("--rate", rate, "rate override (nats/use unless --bits)")
            ->each([&](const std::string&) { have_rate = true; });
        sub->add_flag("--bits", cfg.rates_in_bits, "interpret --rate in bits/use");
        sub->add_option("--out", cfg.out_path, "write output to a file instead of stdout");
        sub->add_option("--s", s_val, "tilt override (default: optimizer's s*)")
            ->each([&](const std::string&) { have_s = true; });
    };

    CLI::App* analyze = app.add_subcommand("analyze", "exponent and regularity report (JSON)");
    add_common(analyze);
    analyze->add_option("--delta", delta_val, "delta override for the constrained exponent")
        ->each([&](const std::string&) { have_delta = true; });

    CLI::App* bounds = app.add_subcommand("bounds", "bound curves over an n grid (CSV)");
    add_common(bounds);
    bounds->add_option("--n", cfg.n_grid, "blocklength grid, comma separated")
        ->required()
        ->delimiter(',');
    bounds->add_option("--kind", kind_names, "rcu, rcu_mc, gallager, shape or all")
        ->delimiter(',');
    bounds->add_flag("--mc", cfg.use_mc, "Monte Carlo RCU instead of exact");
    bounds->add_option("--trials", cfg.trials, "Monte Carlo trials");
    bounds->add_option("--seed", seed_val, "RNG seed (required for Monte Carlo)")
        ->each([&](const std::string&) { have_seed = true; });
    bounds->add_option("--max-y-types", cfg.budget.max_y_types,
                       "exact-RCU output-type budget");

    CLI::App* prefactor =
        app.add_subcommand("prefactor", "prefactor-order regression against the bound curve");
    add_common(prefactor);
    prefactor->add_option("--n", cfg.n_grid, "blocklength grid, comma separated")
        ->required()
        ->delimiter(',');
    prefactor->add_option("--tol", cfg.fit_tol, "pass tolerance on the fitted slope");
    prefactor->add_flag("--mc", cfg.use_mc, "Monte Carlo RCU instead of exact");
    prefactor->add_option("--trials", cfg.trials, "Monte Carlo trials");
    prefactor->add_option("--seed", seed_val, "RNG seed (required for Monte Carlo)")
        ->each([&](const std::string&) { have_seed = true; });
    prefactor->add_option("--max-y-types", cfg.budget.max_y_types,
                          "exact-RCU output-type budget");

    CLI::App* simulate = app.add_subcommand("simulate", "random-coding error simulation (JSON)");
    add_common(simulate);
    simulate->add_option("--n", cfg.n_grid, "blocklength")->required();
    simulate->add_option("--trials", cfg.trials, "number of trials")->required();
    simulate->add_option("--seed", seed_val, "RNG seed")
        ->required()
        ->each([&](const std::string&) { have_seed = true; });
    simulate->add_flag("--csv", cfg.csv_output, "emit a CSV row instead of JSON");

    CLI::App* spectrum = app.add_subcommand("spectrum", "dump a single-letter law as CSV");
    add_common(spectrum);
    spectrum->add_option("--kind", cfg.spectrum_kind, "forward, competitor or reverse");
    spectrum->add_option("--y", cfg.spectrum_y, "output symbol for competitor/reverse");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (have_rate) cfg.rate_override = rate;
    if (have_s) cfg.s_override = s_val;
    if (have_delta) cfg.delta_override = delta_val;
    if (have_seed) cfg.seed = seed_val;

    if (analyze->parsed()) cfg.command = rcbound::RunConfig::Command::Analyze;
    if (bounds->parsed()) {
        cfg.command = rcbound::RunConfig::Command::Bounds;
        if (!kind_names.empty()) {
            try {
                cfg.kinds = parse_kinds(kind_names);
            } catch (const CLI::Error& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
        }
    }
    if (prefactor->parsed()) cfg.command = rcbound::RunConfig::Command::Prefactor;
    if (simulate->parsed()) cfg.command = rcbound::RunConfig::Command::Simulate;
    if (spectrum->parsed()) cfg.command = rcbound::RunConfig::Command::Spectrum;

    return rcbound::run_command(cfg, std::cout, std::cerr);
}
