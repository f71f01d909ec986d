#ifndef RCBOUND_BOUNDS_HPP
#define RCBOUND_BOUNDS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcbound/exponents.hpp"
#include "rcbound/law.hpp"
#include "rcbound/scenario.hpp"

namespace rcbound {

enum class BoundKind { RCU_EXACT, RCU_MC, GALLAGER, THEOREM_SHAPE };

std::string bound_kind_name(BoundKind k);

// Per-blocklength log bound values, in nats.
struct BoundCurve {
    std::vector<int> n_values;
    std::vector<double> log_bound;
    BoundKind kind = BoundKind::RCU_EXACT;
};

struct RcuBudget {
    std::uint64_t max_y_types = 2'000'000;
    std::size_t max_atoms = kDefaultAtomCap;      // per-law cap inside convolutions
    std::size_t max_table_atoms = 20'000'000;     // cumulative power-table cap
};

// Exact random-coding union bound
//   E[min{1, (M-1) P[i_s^n(Xbar,Y) >= i_s^n(X,Y) | X,Y]}],  M = ceil(e^{nR}),
// evaluated by grouping sequences by joint type: conditioned on the output
// type, the transmitted density i_s^n(X,Y) and the competitor sum are exact
// convolutions of per-output-symbol laws, reused incrementally across types.
// Returns log of the bound (-inf when M = 1). Throws BudgetExceeded when the
// output-type count or convolution supports exceed the budget.
double rcu_exact(const Scenario& sc, double s, int n, const RcuBudget& budget = {});

// log of the Kaplan-Shamai exponential bound e^{-n E_r(Q,R)}.
double gallager_bound(const Scenario& sc, int n);
double gallager_bound(double e_r, int n);

struct TailComparison {
    double lhs = 0.0;      // E[e^{-sum Z} 1{sum Z > t}], exact
    double rhs = 0.0;      // 2 (log2/sqrt(2 pi) + 12 T / sigma^2) (1/sigma) e^{-t}
    double log_lhs = 0.0;
    double log_rhs = 0.0;
};

// Exact evaluation of both sides of the Berry-Esseen-type tail bound for the
// n-fold sum of i.i.d. copies of `law`, with sigma^2 = n Var and T = n E|Z-EZ|^3.
// Throws ZeroVariance when the law is degenerate.
TailComparison berry_esseen_tail(const DiscreteRealLaw& law, int n, double t);

// Reference curve alpha_order*log n - n*E_r (constant set to 1; shape only).
BoundCurve theorem_shape(const Scenario& sc, std::span<const int> n_values);
BoundCurve theorem_shape(const ExponentReport& report, std::span<const int> n_values);

}  // namespace rcbound

#endif
