#include "rcbound/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "rcbound/density.hpp"
#include "rcbound/montecarlo.hpp"
#include "rcbound/regularity.hpp"
#include "rcbound/report_io.hpp"

namespace rcbound {

namespace {

Scenario load_with_overrides(const RunConfig& cfg) {
    Scenario sc = load_scenario(cfg.scenario_path);
    if (cfg.rate_override) {
        double r = *cfg.rate_override;
        if (cfg.rates_in_bits) r *= std::log(2.0);
        sc = validate_scenario(sc.channel.w, sc.metric.q, sc.input.probs, r, sc.labels_x,
                               sc.labels_y);
    }
    return sc;
}

void write_output(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) throw std::ios_base::failure("cannot open output file: " + cfg.out_path);
    f << text;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const Scenario sc = load_with_overrides(cfg);
    const ExponentReport rep = error_exponent(sc);
    const double s = cfg.s_override.value_or(rep.s_star);
    RegularityReport reg = regularity_report(sc, rep.rho_hat, s);
    if (cfg.delta_override && reg.regular) {
        reg.delta = *cfg.delta_override;
        reg.exponent_gap = type_exponent_constrained(sc, rep.rho_hat, s, reg.delta) -
                           type_exponent_unconstrained(sc, rep.rho_hat, s);
    }
    write_output(cfg, out, analyze_json(rep, reg));
    return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
    const Scenario sc = load_with_overrides(cfg);
    if (cfg.n_grid.empty()) throw InvalidScenario("bounds needs a nonempty --n grid");
    const ExponentReport rep = error_exponent(sc);
    const double s = cfg.s_override.value_or(rep.s_star);

    std::vector<BoundCurve> curves;
    for (BoundKind kind : cfg.kinds) {
        BoundCurve c;
        c.kind = kind;
        switch (kind) {
            case BoundKind::RCU_EXACT:
            case BoundKind::RCU_MC: {
                const bool mc = cfg.use_mc || kind == BoundKind::RCU_MC;
                if (mc && !cfg.seed)
                    throw InvalidScenario("Monte Carlo bounds require an explicit --seed");
                c.kind = mc ? BoundKind::RCU_MC : BoundKind::RCU_EXACT;
                for (int n : cfg.n_grid) {
                    c.n_values.push_back(n);
                    if (mc) {
                        const SimEstimate est = rcu_monte_carlo(sc, s, n, cfg.trials, *cfg.seed);
                        c.log_bound.push_back(est.p_hat > 0 ? std::log(est.p_hat)
                                                            : -std::numeric_limits<double>::infinity());
                    } else {
                        c.log_bound.push_back(rcu_exact(sc, s, n, cfg.budget));
                    }
                }
                break;
            }
            case BoundKind::GALLAGER:
                for (int n : cfg.n_grid) {
                    c.n_values.push_back(n);
                    c.log_bound.push_back(gallager_bound(rep.e_r, n));
                }
                break;
            case BoundKind::THEOREM_SHAPE:
                c = theorem_shape(rep, cfg.n_grid);
                break;
        }
        curves.push_back(std::move(c));
    }
    write_output(cfg, out, curves_csv(curves));
    return 0;
}

int cmd_prefactor(const RunConfig& cfg, std::ostream& out) {
    const Scenario sc = load_with_overrides(cfg);
    if (cfg.n_grid.empty()) throw InvalidScenario("prefactor needs a nonempty --n grid");
    const ExponentReport rep = error_exponent(sc);
    const double s = cfg.s_override.value_or(rep.s_star);

    BoundCurve curve;
    curve.kind = cfg.use_mc ? BoundKind::RCU_MC : BoundKind::RCU_EXACT;
    for (int n : cfg.n_grid) {
        curve.n_values.push_back(n);
        if (cfg.use_mc) {
            if (!cfg.seed) throw InvalidScenario("Monte Carlo prefactor requires --seed");
            const SimEstimate est = rcu_monte_carlo(sc, s, n, cfg.trials, *cfg.seed);
            curve.log_bound.push_back(est.p_hat > 0 ? std::log(est.p_hat)
                                                    : -std::numeric_limits<double>::infinity());
        } else {
            curve.log_bound.push_back(rcu_exact(sc, s, n, cfg.budget));
        }
    }
    const PrefactorFit fit = prefactor_fit(curve, rep.e_r, rep.alpha_order);
    write_output(cfg, out, prefactor_json(fit, cfg.fit_tol, curve));
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const Scenario sc = load_with_overrides(cfg);
    if (cfg.n_grid.size() != 1) throw InvalidScenario("simulate needs exactly one --n value");
    if (!cfg.seed) throw InvalidScenario("simulate requires an explicit --seed");
    const SimEstimate est = simulate_pe(sc, cfg.n_grid.front(), cfg.trials, *cfg.seed);
    write_output(cfg, out, cfg.csv_output ? estimate_csv(est, cfg.n_grid.front())
                                          : estimate_json(est, cfg.n_grid.front(), "simulate_pe"));
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const Scenario sc = load_with_overrides(cfg);
    const double s = cfg.s_override.value_or(1.0);
    const DensityTable table = build_density_table(sc, s);
    DiscreteRealLaw law;
    if (cfg.spectrum_kind == "forward")
        law = forward_spectrum(table, sc);
    else if (cfg.spectrum_kind == "competitor")
        law = competitor_spectrum(table, sc, cfg.spectrum_y);
    else if (cfg.spectrum_kind == "reverse")
        law = reverse_spectrum(table, cfg.spectrum_y);
    else
        throw InvalidScenario("unknown spectrum kind: " + cfg.spectrum_kind);
    write_output(cfg, out, law_csv(law));
    return 0;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case RunConfig::Command::Analyze: return cmd_analyze(cfg, out);
            case RunConfig::Command::Bounds: return cmd_bounds(cfg, out);
            case RunConfig::Command::Prefactor: return cmd_prefactor(cfg, out);
            case RunConfig::Command::Simulate: return cmd_simulate(cfg, out);
            case RunConfig::Command::Spectrum: return cmd_spectrum(cfg, out);
        }
        err << "error: unknown command\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n"
            << "hint: rerun with --mc --trials N --seed S for a Monte Carlo estimate\n";
        return 3;
    } catch (const MemoryBudget& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const AtomExplosion& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rcbound
