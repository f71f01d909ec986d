#include "rcbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rcbound/density.hpp"
#include "rcu_support.hpp"

namespace rcbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t composition_count(std::int64_t n, std::int64_t parts) {
    // C(n + parts - 1, parts - 1), saturating via long double overflow check
    long double r = 1.0L;
    for (std::int64_t i = 1; i < parts; ++i) r *= static_cast<long double>(n + i) / i;
    if (r > 1e18L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(r + 0.5L);
}

// Recursive sweep over output-type compositions. Columns 0..J-2 convolve one
// letter at a time so every prefix is shared; the last column pulls k-fold
// powers from a cache.
class RcuEvaluator {
  public:
    RcuEvaluator(const detail::ColumnLaws& cols, double log_m1, const RcuBudget& budget, int n)
        : cols_(cols),
          log_m1_(log_m1),
          budget_(budget),
          n_(n),
          comp_last_(cols.competitor.back(), budget.max_atoms, budget.max_table_atoms),
          post_last_(cols.posterior.back(), budget.max_atoms, budget.max_table_atoms) {}

    double run() {
        const DiscreteRealLaw unit = DiscreteRealLaw::from_atoms({{0.0, 1.0}});
        walk(0, n_, std::lgamma(static_cast<double>(n_) + 1.0), unit, unit);
        return total_.value();
    }

  private:
    void walk(std::size_t col, int remaining, double log_w, const DiscreteRealLaw& comp,
              const DiscreteRealLaw& post) {
        const std::size_t last = cols_.symbols.size() - 1;
        if (col == last) {
            const double lw = log_w + weight_term(col, remaining);
            emit(lw, convolve(comp, comp_last_.power(remaining), budget_.max_atoms),
                 convolve(post, post_last_.power(remaining), budget_.max_atoms));
            return;
        }
        DiscreteRealLaw comp_k = comp;
        DiscreteRealLaw post_k = post;
        for (int k = 0;; ++k) {
            walk(col + 1, remaining - k, log_w + weight_term(col, k), comp_k, post_k);
            if (k == remaining) break;
            comp_k = convolve(comp_k, cols_.competitor[col], budget_.max_atoms);
            post_k = convolve(post_k, cols_.posterior[col], budget_.max_atoms);
        }
    }

    double weight_term(std::size_t col, int k) const {
        return static_cast<double>(k) * cols_.log_py[col] -
               std::lgamma(static_cast<double>(k) + 1.0);
    }

    // log_w is the log probability of the output type; comp and post are the
    // competitor-sum and transmitted-density laws conditioned on it.
    void emit(double log_w, const DiscreteRealLaw& comp, const DiscreteRealLaw& post) {
        const detail::TailTable tails(comp);
        long double s = 0.0;
        for (const Atom& a : post.atoms()) {
            const double log_u = log_m1_ + tails.log_tail_geq(a.value);
            s += a.prob * (log_u >= 0.0 ? 1.0 : std::exp(log_u));
        }
        if (s > 0.0) total_.add(log_w + std::log(static_cast<double>(s)));
    }

    const detail::ColumnLaws& cols_;
    double log_m1_;
    RcuBudget budget_;
    int n_;
    detail::PowerCache comp_last_;
    detail::PowerCache post_last_;
    detail::LogSum total_;
};

}  // namespace

std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::RCU_EXACT: return "rcu";
        case BoundKind::RCU_MC: return "rcu_mc";
        case BoundKind::GALLAGER: return "gallager";
        case BoundKind::THEOREM_SHAPE: return "shape";
    }
    return "?";
}

double rcu_exact(const Scenario& sc, double s, int n, const RcuBudget& budget) {
    if (n < 1) throw InvalidScenario("blocklength must be >= 1");
    if (!(s >= 0.0)) throw InvalidScenario("s must be >= 0");
    const double log_m1 = detail::log_m_minus_one(n, sc.rate);
    if (log_m1 == detail::kNegInf) return -kInf;  // M = 1: no competitors

    const DensityTable table = build_density_table(sc, s);
    const detail::ColumnLaws cols(sc, table);
    const std::uint64_t y_types =
        composition_count(n, static_cast<std::int64_t>(cols.symbols.size()));
    if (y_types > budget.max_y_types)
        throw BudgetExceeded("output-type count " + std::to_string(y_types) +
                             " exceeds budget " + std::to_string(budget.max_y_types) +
                             "; use the Monte Carlo evaluator");
    try {
        RcuEvaluator eval(cols, log_m1, budget, n);
        return eval.run();
    } catch (const AtomExplosion& e) {
        throw BudgetExceeded(std::string("exact RCU convolution support too large (") +
                             e.what() + "); use the Monte Carlo evaluator");
    }
}

double gallager_bound(double e_r, int n) { return -static_cast<double>(n) * e_r; }

double gallager_bound(const Scenario& sc, int n) {
    return gallager_bound(error_exponent(sc).e_r, n);
}

TailComparison berry_esseen_tail(const DiscreteRealLaw& law, int n, double t) {
    if (n < 1) throw InvalidScenario("n must be >= 1");
    const Moments m = law_moments(law);
    if (!(m.variance > 0.0)) throw ZeroVariance("tail bound needs positive variance");

    const DiscreteRealLaw sum = convolve_n(law, n);
    // E[e^{-S} 1{S > t}] in log domain (strict inequality).
    detail::LogSum acc;
    for (const Atom& a : sum.atoms())
        if (a.value > t) acc.add(-a.value + std::log(a.prob));
    const double log_lhs = acc.value();

    const double sigma2 = static_cast<double>(n) * m.variance;
    const double big_t = static_cast<double>(n) * m.third_abs_central;
    const double factor = 2.0 * (std::log(2.0) / std::sqrt(2.0 * std::numbers::pi) + 12.0 * big_t / sigma2);
    const double log_rhs = std::log(factor) - 0.5 * std::log(sigma2) - t;

    if (log_lhs > log_rhs + 1e-12)
        throw std::logic_error("tail bound violated; moments are inconsistent");
    return TailComparison{std::exp(log_lhs), std::exp(log_rhs), log_lhs, log_rhs};
}

BoundCurve theorem_shape(const ExponentReport& report, std::span<const int> n_values) {
    BoundCurve c;
    c.kind = BoundKind::THEOREM_SHAPE;
    for (int n : n_values) {
        c.n_values.push_back(n);
        c.log_bound.push_back(report.alpha_order * std::log(static_cast<double>(n)) -
                              static_cast<double>(n) * report.e_r);
    }
    return c;
}

BoundCurve theorem_shape(const Scenario& sc, std::span<const int> n_values) {
    return theorem_shape(error_exponent(sc), n_values);
}

}  // namespace rcbound
