#ifndef RCBOUND_REGULARITY_HPP
#define RCBOUND_REGULARITY_HPP

#include <span>
#include <vector>

#include "rcbound/density.hpp"
#include "rcbound/scenario.hpp"

namespace rcbound {

// Output symbols on which the metric distinguishes two inputs that are both
// reachable: y is in Y1 iff q(x,y) != q(xb,y) for some x, xb with
// Q(x)Q(xb)W(y|x)W(y|xb) > 0. Metric equality is relative 1e-12.
std::vector<int> compute_y1(const Scenario& sc);

// (W,q,Q) is regular iff Y1 is nonempty. The BEC under ML decoding is the
// canonical irregular triple.
bool is_regular(const Scenario& sc);

// v_s = min_{y in Y1} Var[i_s(X_s,Y) | Y=y]; strictly positive for s > 0.
// Throws IrregularScenario when Y1 is empty.
double variance_floor(const Scenario& sc, double s);

// For y_seq whose empirical Y1-mass strictly exceeds delta, returns the lower
// bound n*delta*v_s on Var[i_s^n(X_s,Y)|Y=y_seq] (the exact per-letter sum is
// checked against it). Throws NotInF when membership fails.
double conditional_variance_lower_bound(const Scenario& sc, double s,
                                        std::span<const int> y_seq, double delta);

// Closed-form minimizer of D(P||QxW) + rho*E_P[i_s]:
//   P*(x,y) proportional to Q(x) W(y|x) e^{-rho i_s(x,y)}.
Matrix optimal_joint_type(const Scenario& sc, double rho, double s);

// min over joint distributions of D(P||QxW) + rho*E_P[i_s], evaluated at the
// closed-form minimizer. Equals E0(rho,s) as an algebraic identity.
double type_exponent_unconstrained(const Scenario& sc, double rho, double s);

// Same minimum subject to sum_{y in Y1} P_Y(y) <= delta, solved by tilting
// P* with e^{-lambda 1{y in Y1}} and bisecting lambda on the constraint.
// Returns +infinity when every supported output lies in Y1 (empty feasible
// set). Throws InfeasibleDelta for delta <= 0.
double type_exponent_constrained(const Scenario& sc, double rho, double s, double delta);

struct DeltaSelection {
    double delta = 0.0;
    int y_star = -1;
    double exponent_gap = 0.0;  // constrained minus unconstrained, > 0
};

// Picks y* = argmax_{y in Y1} P*_Y(y) and delta = P*_Y(y*)/2, and certifies
// the positive exponent gap. Throws IrregularScenario.
DeltaSelection select_delta(const Scenario& sc, double rho, double s);

struct RegularityReport {
    std::vector<int> y1;
    bool regular = false;
    double v_s = 0.0;        // NaN when irregular
    Matrix p_star;
    int y_star = -1;
    double delta = 0.0;      // NaN when irregular
    double exponent_gap = 0.0;  // NaN when irregular; +inf when Y1 covers the support
};

// Full report at a given (rho, s), typically the exponent optimizers.
RegularityReport regularity_report(const Scenario& sc, double rho, double s);

}  // namespace rcbound

#endif
