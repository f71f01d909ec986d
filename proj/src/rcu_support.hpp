#ifndef RCBOUND_RCU_SUPPORT_HPP
#define RCBOUND_RCU_SUPPORT_HPP

// Shared machinery for the exact and Monte Carlo RCU evaluators: per-output
// single-letter laws, lazily grown convolution powers, and log-domain tail
// lookups with the library's tie tolerance.

#include <cmath>
#include <limits>
#include <vector>

#include "rcbound/density.hpp"
#include "rcbound/law.hpp"
#include "rcbound/scenario.hpp"

namespace rcbound::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(M - 1) for M = ceil(e^{nR}); -inf when M = 1. Beyond nR ~ 40 the -1 is
// below double resolution.
inline double log_m_minus_one(int n, double rate) {
    const double nr = static_cast<double>(n) * rate;
    if (nr >= 40.0) return nr;
    const std::uint64_t m = codebook_size(n, rate);
    if (m <= 1) return kNegInf;
    return std::log(static_cast<double>(m - 1));
}

// Sorted finite atom values with log suffix sums, for P[L >= t] queries.
// Ties within the value-merge tolerance of t count as >=.
class TailTable {
  public:
    explicit TailTable(const DiscreteRealLaw& law) {
        values_.reserve(law.size());
        for (const Atom& a : law.atoms()) values_.push_back(a.value);
        log_suffix_.assign(values_.size() + 1, kNegInf);
        long double run = 0.0;
        for (std::size_t i = values_.size(); i-- > 0;) {
            run += law.atoms()[i].prob;
            log_suffix_[i] = std::log(static_cast<double>(run));
        }
    }

    double log_tail_geq(double t) const {
        const double cut = t - value_merge_tol(t);
        std::size_t lo = 0, hi = values_.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (values_[mid] < cut)
                lo = mid + 1;
            else
                hi = mid;
        }
        return log_suffix_[lo];
    }

  private:
    std::vector<double> values_;
    std::vector<double> log_suffix_;
};

// Per-letter laws for every reachable output symbol:
//   competitor[c]: law of i_s(Xbar, y_c) with Xbar ~ Q (may have -inf mass)
//   posterior[c]:  law of i_s(X, y_c) with X ~ P(x|y_c), always finite
struct ColumnLaws {
    std::vector<int> symbols;  // reachable y, ascending
    std::vector<double> log_py;
    std::vector<DiscreteRealLaw> competitor;
    std::vector<DiscreteRealLaw> posterior;

    ColumnLaws(const Scenario& sc, const DensityTable& table) {
        for (std::size_t y = 0; y < sc.ny(); ++y) {
            const double py = sc.output_marginal(y);
            if (py <= 0.0) continue;
            symbols.push_back(static_cast<int>(y));
            log_py.push_back(std::log(py));
            competitor.push_back(competitor_spectrum(table, sc, static_cast<int>(y)));
            std::vector<Atom> post;
            for (std::size_t x = 0; x < sc.nx(); ++x)
                if (sc.supported(x, y)) post.push_back({table.i[x][y], sc.qx(x) * sc.w(x, y) / py});
            posterior.push_back(DiscreteRealLaw::from_atoms(std::move(post)));
        }
    }
};

// Lazily grown k-fold convolution powers of a single-letter law. The total
// stored atom count is capped so that wide-support channels fail fast with
// AtomExplosion instead of exhausting memory.
class PowerCache {
  public:
    PowerCache(DiscreteRealLaw base, std::size_t max_atoms, std::size_t max_total_atoms)
        : base_(std::move(base)), max_atoms_(max_atoms), max_total_atoms_(max_total_atoms) {
        powers_.push_back(DiscreteRealLaw::from_atoms({{0.0, 1.0}}));
    }

    const DiscreteRealLaw& power(int k) {
        while (powers_.size() <= static_cast<std::size_t>(k)) {
            DiscreteRealLaw next = convolve(powers_.back(), base_, max_atoms_);
            total_atoms_ += next.size();
            if (total_atoms_ > max_total_atoms_)
                throw AtomExplosion("power cache exceeded its atom budget");
            powers_.push_back(std::move(next));
        }
        return powers_[static_cast<std::size_t>(k)];
    }

  private:
    DiscreteRealLaw base_;
    std::size_t max_atoms_;
    std::size_t max_total_atoms_;
    std::size_t total_atoms_ = 0;
    std::vector<DiscreteRealLaw> powers_;
};

// Streaming log-sum-exp accumulator.
class LogSum {
  public:
    void add(double log_term) {
        if (log_term == kNegInf) return;
        if (log_term <= max_) {
            sum_ += std::exp(log_term - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }
    double value() const { return sum_ > 0.0 ? max_ + std::log(static_cast<double>(sum_)) : kNegInf; }

  private:
    double max_ = kNegInf;
    long double sum_ = 0.0;
};

}  // namespace rcbound::detail

#endif
