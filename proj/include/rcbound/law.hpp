#ifndef RCBOUND_LAW_HPP
#define RCBOUND_LAW_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rcbound/errors.hpp"

namespace rcbound {

// Merge tolerance for atom values: relative 1e-12, absolute 1e-14 near zero.
// Values are logs of rationals, so exact collisions are structural (symmetric
// channels) and must merge to keep convolution supports polynomial.
inline double value_merge_tol(double v) {
    const double a = v < 0 ? -v : v;
    return a * 1e-12 > 1e-14 ? a * 1e-12 : 1e-14;
}

constexpr std::size_t kDefaultAtomCap = 5'000'000;

struct Atom {
    double value = 0.0;  // nats
    double prob = 0.0;
};

// A finite list of (value, probability) atoms with strictly increasing values
// after canonicalization, plus an optional single atom at -infinity. Used for
// the laws of i_s(X,Y), i_s(Xbar,y) and the tilted variable Z.
class DiscreteRealLaw {
  public:
    DiscreteRealLaw() = default;

    // Canonicalizes (sort, merge within tolerance, drop zero mass) and checks
    // that the total mass is 1 within 1e-10.
    static DiscreteRealLaw from_atoms(std::vector<Atom> atoms, double neg_inf_mass = 0.0);

    // Same canonicalization without the mass-1 check, for weighted measures.
    static DiscreteRealLaw from_atoms_unchecked(std::vector<Atom> atoms,
                                                double neg_inf_mass = 0.0);

    std::span<const Atom> atoms() const { return atoms_; }
    double neg_inf_mass() const { return neg_inf_mass_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty() && neg_inf_mass_ == 0.0; }

    double total_mass() const;

    // P[V >= t], counting atoms within the value-merge tolerance of t as ties.
    // The -infinity atom never reaches a finite threshold.
    double tail_geq(double t) const;
    double log_tail_geq(double t) const;

    // Law of a + b*V (b != 0). Negation of a law with -infinity mass is
    // rejected rather than inventing a +infinity atom.
    DiscreteRealLaw affine(double a, double b) const;

  private:
    std::vector<Atom> atoms_;      // sorted, strictly increasing values
    double neg_inf_mass_ = 0.0;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double third_abs_central = 0.0;  // E|V - EV|^3
};

// Exact moments of a finite law. Throws InfiniteAtom if mass sits at -infinity.
Moments law_moments(const DiscreteRealLaw& law);

// Law of the sum of two independent variables. Pairwise products with sorted
// merge; throws AtomExplosion beyond max_atoms.
DiscreteRealLaw convolve(const DiscreteRealLaw& a, const DiscreteRealLaw& b,
                         std::size_t max_atoms = kDefaultAtomCap);

// Exact law of the n-fold i.i.d. sum; n = 0 gives the unit atom at 0.
DiscreteRealLaw convolve_n(const DiscreteRealLaw& law, int n,
                           std::size_t max_atoms = kDefaultAtomCap);

// Exponentially tilted law. base is the law of R - i_s(X,Y); z has atom
// probabilities exp(log_normalizer + rho_hat * t) * base.prob(t), and
// log_normalizer must make z a probability law (checked within 1e-8).
struct TiltedLaw {
    DiscreteRealLaw base;
    double rho_hat = 0.0;
    DiscreteRealLaw z;
    double log_normalizer = 0.0;  // equals E_r(Q,R) at the optimizer
};

TiltedLaw tilt(const DiscreteRealLaw& base, double rho_hat, double log_normalizer);

}  // namespace rcbound

#endif
