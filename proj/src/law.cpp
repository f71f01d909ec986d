#include "rcbound/law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rcbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Atom> canonicalize(std::vector<Atom> atoms, double& neg_inf_mass) {
    std::vector<Atom> kept;
    kept.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (a.prob < 0.0 || !std::isfinite(a.prob))
            throw NormalizationFailure("atom probability must be finite and >= 0");
        if (a.prob == 0.0) continue;
        if (a.value == -kInf) {
            neg_inf_mass += a.prob;
            continue;
        }
        if (!std::isfinite(a.value)) throw NormalizationFailure("atom value must be finite or -inf");
        kept.push_back(a);
    }
    std::sort(kept.begin(), kept.end(),
              [](const Atom& l, const Atom& r) { return l.value < r.value; });

    std::vector<Atom> merged;
    merged.reserve(kept.size());
    for (const Atom& a : kept) {
        if (!merged.empty() && a.value - merged.back().value <= value_merge_tol(a.value)) {
            Atom& m = merged.back();
            const double p = m.prob + a.prob;
            m.value = (m.value * m.prob + a.value * a.prob) / p;  // probability-weighted
            m.prob = p;
        } else {
            merged.push_back(a);
        }
    }
    return merged;
}

}  // namespace

DiscreteRealLaw DiscreteRealLaw::from_atoms_unchecked(std::vector<Atom> atoms,
                                                      double neg_inf_mass) {
    DiscreteRealLaw law;
    law.neg_inf_mass_ = neg_inf_mass;
    law.atoms_ = canonicalize(std::move(atoms), law.neg_inf_mass_);
    return law;
}

DiscreteRealLaw DiscreteRealLaw::from_atoms(std::vector<Atom> atoms, double neg_inf_mass) {
    DiscreteRealLaw law = from_atoms_unchecked(std::move(atoms), neg_inf_mass);
    if (std::abs(law.total_mass() - 1.0) > 1e-10)
        throw NormalizationFailure("law mass " + std::to_string(law.total_mass()) +
                                   " is not 1 within 1e-10");
    return law;
}

double DiscreteRealLaw::total_mass() const {
    long double s = neg_inf_mass_;
    for (const Atom& a : atoms_) s += a.prob;
    return static_cast<double>(s);
}

double DiscreteRealLaw::tail_geq(double t) const {
    const double cut = t - value_merge_tol(t);
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), cut,
                               [](const Atom& a, double v) { return a.value < v; });
    long double s = 0.0;
    for (; it != atoms_.end(); ++it) s += it->prob;
    return static_cast<double>(s);
}

double DiscreteRealLaw::log_tail_geq(double t) const {
    const double p = tail_geq(t);
    return p > 0.0 ? std::log(p) : -kInf;
}

DiscreteRealLaw DiscreteRealLaw::affine(double a, double b) const {
    if (b == 0.0 || !std::isfinite(a) || !std::isfinite(b))
        throw NormalizationFailure("affine law map needs finite a and nonzero b");
    if (b < 0.0 && neg_inf_mass_ > 0.0)
        throw InfiniteAtom("negating a law with mass at -infinity");
    std::vector<Atom> out;
    out.reserve(atoms_.size());
    for (const Atom& at : atoms_) out.push_back({a + b * at.value, at.prob});
    return from_atoms_unchecked(std::move(out), neg_inf_mass_);
}

Moments law_moments(const DiscreteRealLaw& law) {
    if (law.neg_inf_mass() > 0.0)
        throw InfiniteAtom("moments undefined: law has mass at -infinity");
    long double mass = 0.0, mean = 0.0;
    for (const Atom& a : law.atoms()) {
        mass += a.prob;
        mean += static_cast<long double>(a.prob) * a.value;
    }
    if (mass <= 0.0) throw InfiniteAtom("moments undefined: empty law");
    mean /= mass;
    long double var = 0.0, m3 = 0.0;
    for (const Atom& a : law.atoms()) {
        const long double d = a.value - mean;
        var += a.prob * d * d;
        m3 += a.prob * d * d * (d < 0 ? -d : d);
    }
    return Moments{static_cast<double>(mean), static_cast<double>(var / mass),
                   static_cast<double>(m3 / mass)};
}

namespace {

// Spacing when the law's values form a uniform lattice (0 otherwise). Binary
// and erasure-like channels produce such laws, and their convolutions stay on
// the lattice, so this unlocks an index-accumulation path with no sorting.
double lattice_step(const DiscreteRealLaw& law) {
    if (law.size() < 2) return 0.0;
    const auto atoms = law.atoms();
    const double step = atoms[1].value - atoms[0].value;
    for (std::size_t i = 2; i < atoms.size(); ++i) {
        const double d = atoms[i].value - atoms[i - 1].value;
        if (std::abs(d - step) > 1e-13 * std::max(std::abs(d), std::abs(step))) return 0.0;
    }
    return step;
}

}  // namespace

DiscreteRealLaw convolve(const DiscreteRealLaw& a, const DiscreteRealLaw& b,
                         std::size_t max_atoms) {
    const std::size_t products = a.size() * b.size();
    if (products > max_atoms)
        throw AtomExplosion("convolution support " + std::to_string(products) +
                            " exceeds cap " + std::to_string(max_atoms));
    // Mass reaching -infinity in either summand stays at -infinity.
    const double inf_mass =
        a.neg_inf_mass() + b.neg_inf_mass() - a.neg_inf_mass() * b.neg_inf_mass();

    // Degenerate summand: plain shift.
    if (a.size() <= 1 || b.size() <= 1) {
        const DiscreteRealLaw& big = a.size() > 1 ? a : b;
        const DiscreteRealLaw& one = a.size() > 1 ? b : a;
        std::vector<Atom> out;
        if (one.size() == 1) {
            out.reserve(big.size());
            for (const Atom& x : big.atoms())
                out.push_back({x.value + one.atoms()[0].value, x.prob * one.atoms()[0].prob});
        }
        return DiscreteRealLaw::from_atoms_unchecked(std::move(out), inf_mass);
    }

    // Matching uniform lattices: accumulate probabilities by index. The step
    // choice depends only on atom values, so two laws sharing a value array
    // (e.g. the posterior and competitor chains of one output type) follow
    // identical paths and keep their ties bitwise exact.
    const double step_a = lattice_step(a);
    const double step_b = lattice_step(b);
    if (step_a != 0.0 && step_b != 0.0 &&
        std::abs(step_a - step_b) <= 1e-13 * std::max(std::abs(step_a), std::abs(step_b))) {
        const std::size_t bins = a.size() + b.size() - 1;
        std::vector<double> probs(bins, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) probs[i + j] += a.atoms()[i].prob * b.atoms()[j].prob;
        const double anchor = a.atoms()[0].value + b.atoms()[0].value;
        std::vector<Atom> out;
        out.reserve(bins);
        for (std::size_t k = 0; k < bins; ++k)
            if (probs[k] > 0.0) out.push_back({anchor + static_cast<double>(k) * step_a, probs[k]});
        return DiscreteRealLaw::from_atoms_unchecked(std::move(out), inf_mass);
    }

    std::vector<Atom> out;
    out.reserve(products);
    for (const Atom& x : a.atoms())
        for (const Atom& y : b.atoms()) out.push_back({x.value + y.value, x.prob * y.prob});
    DiscreteRealLaw r = DiscreteRealLaw::from_atoms_unchecked(std::move(out), inf_mass);
    if (r.size() > max_atoms)
        throw AtomExplosion("convolution produced " + std::to_string(r.size()) + " atoms");
    return r;
}

DiscreteRealLaw convolve_n(const DiscreteRealLaw& law, int n, std::size_t max_atoms) {
    if (n < 0) throw LengthMismatch("convolve_n needs n >= 0");
    DiscreteRealLaw acc = DiscreteRealLaw::from_atoms({{0.0, 1.0}});
    for (int i = 0; i < n; ++i) acc = convolve(acc, law, max_atoms);
    return acc;
}

TiltedLaw tilt(const DiscreteRealLaw& base, double rho_hat, double log_normalizer) {
    std::vector<Atom> z_atoms;
    z_atoms.reserve(base.size());
    long double mass = 0.0;
    for (const Atom& a : base.atoms()) {
        const double p = std::exp(log_normalizer + rho_hat * a.value) * a.prob;
        z_atoms.push_back({a.value, p});
        mass += p;
    }
    // e^{rho_hat * t} kills any mass at t = -infinity when rho_hat > 0; for
    // rho_hat = 0 the atom survives untouched.
    double inf_mass = 0.0;
    if (base.neg_inf_mass() > 0.0) {
        if (rho_hat > 0.0)
            inf_mass = 0.0;
        else
            inf_mass = std::exp(log_normalizer) * base.neg_inf_mass();
        mass += inf_mass;
    }
    if (std::abs(static_cast<double>(mass) - 1.0) > 1e-8)
        throw NormalizationFailure("tilt normalizer inconsistent: mass " +
                                   std::to_string(static_cast<double>(mass)));
    TiltedLaw t;
    t.base = base;
    t.rho_hat = rho_hat;
    t.log_normalizer = log_normalizer;
    t.z = DiscreteRealLaw::from_atoms(std::move(z_atoms), inf_mass);
    return t;
}

}  // namespace rcbound
