#ifndef RCBOUND_MONTECARLO_HPP
#define RCBOUND_MONTECARLO_HPP

#include <cstdint>
#include <limits>
#include <span>

#include "rcbound/bounds.hpp"
#include "rcbound/scenario.hpp"

namespace rcbound {

// SplitMix64 substream keyed by (seed, stream index). Every trial gets its
// own stream, so results are bit-identical regardless of how trials are
// partitioned across workers.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double next_unit();  // uniform in [0,1), 53 bits

    // Samples an index from a probability vector by CDF scan.
    std::size_t categorical(std::span<const double> probs);

  private:
    std::uint64_t state_;
};

struct SimEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
};

// Full random-coding simulation: per trial, draw a fresh i.i.d. codebook of
// M = ceil(e^{nR}) codewords from Q^n, send a uniform message through W^n,
// decode by the max-metric rule with uniform random tie-breaking, and count
// errors. Throws MemoryBudget when n*M is infeasible.
SimEstimate simulate_pe(const Scenario& sc, int n, long long trials, std::uint64_t seed);

// Monte Carlo RCU: samples (x,y) ~ (Q x W)^n and averages
// min{1, (M-1) P[i_s^n(Xbar,y) >= i_s^n(x,y)]} with the inner probability
// computed exactly from cached per-output-type convolutions. Unbiased for the
// exact RCU value.
SimEstimate rcu_monte_carlo(const Scenario& sc, double s, int n, long long trials,
                            std::uint64_t seed);

struct PrefactorFit {
    double slope = 0.0;
    double intercept = 0.0;       // log K estimate
    double residual = 0.0;        // RMS residual of the fit
    double predicted_slope = 0.0; // from the regime's alpha_order
};

// Least-squares fit of log(bound) + n*e_r against log n. Needs at least four
// finite points over distinct blocklengths (DegenerateFit otherwise).
PrefactorFit prefactor_fit(const BoundCurve& curve, double e_r,
                           double predicted_slope = std::numeric_limits<double>::quiet_NaN());

}  // namespace rcbound

#endif
