#ifndef RCBOUND_DENSITY_HPP
#define RCBOUND_DENSITY_HPP

#include <span>

#include "rcbound/law.hpp"
#include "rcbound/scenario.hpp"

namespace rcbound {

// Per-letter table for a fixed tilt s:
//   i[x][y] = s*log q(x,y) - log sum_xb Q(xb) q(xb,y)^s   (-inf where q = 0)
//   v[x][y] = Q(x) q(x,y)^s / sum_xb Q(xb) q(xb,y)^s
// so that i_s(x,y) = log(V_s(x|y)/Q(x)) on the support.
struct DensityTable {
    double s = 0.0;
    Matrix i;  // nats, indexed [x][y]
    Matrix v;  // column-stochastic in x for each y
};

// Throws DegenerateColumn when some output symbol is unreachable from the
// support (its metric column vanishes on supp(Q)).
DensityTable build_density_table(const Scenario& sc, double s);

// sum_k i_s(x_k, y_k); -infinity as soon as one term is -infinity.
double multiletter_density(const DensityTable& table, std::span<const int> x_seq,
                           std::span<const int> y_seq);

// Law of i_s(X,Y) with (X,Y) ~ Q x W. Never has mass at -infinity.
DiscreteRealLaw forward_spectrum(const DensityTable& table, const Scenario& sc);

// Law of i_s(Xbar, y) with Xbar ~ Q, for one output symbol. May place mass at
// -infinity (competitors with q(xb,y) = 0).
DiscreteRealLaw competitor_spectrum(const DensityTable& table, const Scenario& sc, int y);

// Law of i_s(X_s, y) with X_s ~ V_s(.|y).
DiscreteRealLaw reverse_spectrum(const DensityTable& table, int y);

}  // namespace rcbound

#endif
