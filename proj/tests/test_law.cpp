#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "rcbound/law.hpp"

using namespace rcbound;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DiscreteRealLaw two_point(double a, double pa, double b, double pb) {
    return DiscreteRealLaw::from_atoms({{a, pa}, {b, pb}});
}

// Seeded random law with k atoms for property tests.
DiscreteRealLaw random_law(std::mt19937_64& rng, int k) {
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::vector<Atom> atoms;
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        const double p = 0.1 + std::generate_canonical<double, 53>(rng);
        atoms.push_back({val(rng), p});
        total += p;
    }
    for (Atom& a : atoms) a.prob /= total;
    return DiscreteRealLaw::from_atoms(std::move(atoms));
}

bool laws_close(const DiscreteRealLaw& a, const DiscreteRealLaw& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.atoms()[i].value - b.atoms()[i].value) > tol) return false;
        if (std::abs(a.atoms()[i].prob - b.atoms()[i].prob) > tol) return false;
    }
    return std::abs(a.neg_inf_mass() - b.neg_inf_mass()) <= tol;
}

}  // namespace

TEST_CASE("canonicalization sorts, merges and validates mass") {
    const DiscreteRealLaw law =
        DiscreteRealLaw::from_atoms({{1.0, 0.25}, {0.0, 0.5}, {1.0 + 1e-15, 0.25}});
    CHECK(law.size() == 2);
    CHECK(law.atoms()[0].value == doctest::Approx(0.0));
    CHECK(law.atoms()[1].prob == doctest::Approx(0.5));

    CHECK_THROWS_AS(DiscreteRealLaw::from_atoms({{0.0, 0.5}}), NormalizationFailure);
    CHECK_THROWS_AS(DiscreteRealLaw::from_atoms({{0.0, -0.5}, {1.0, 1.5}}), NormalizationFailure);

    const DiscreteRealLaw with_inf = DiscreteRealLaw::from_atoms({{0.0, 0.5}, {-kInf, 0.5}});
    CHECK(with_inf.neg_inf_mass() == doctest::Approx(0.5));
    CHECK(with_inf.size() == 1);
}

TEST_CASE("law_moments on simple laws") {
    const DiscreteRealLaw single = DiscreteRealLaw::from_atoms({{3.25, 1.0}});
    const Moments ms = law_moments(single);
    CHECK(ms.mean == doctest::Approx(3.25));
    CHECK(ms.variance == doctest::Approx(0.0));
    CHECK(ms.third_abs_central == doctest::Approx(0.0));

    const Moments m2 = law_moments(two_point(-1.0, 0.5, 1.0, 0.5));
    CHECK(m2.mean == doctest::Approx(0.0));
    CHECK(m2.variance == doctest::Approx(1.0));
    CHECK(m2.third_abs_central == doctest::Approx(1.0));

    CHECK_THROWS_AS(law_moments(DiscreteRealLaw::from_atoms({{0.0, 0.5}, {-kInf, 0.5}})),
                    InfiniteAtom);
}

TEST_CASE("law_moments matches a direct sum") {
    std::mt19937_64 rng(11);
    const DiscreteRealLaw law = random_law(rng, 5);
    double mean = 0.0;
    for (const Atom& a : law.atoms()) mean += a.prob * a.value;
    double var = 0.0;
    for (const Atom& a : law.atoms()) var += a.prob * (a.value - mean) * (a.value - mean);
    const Moments m = law_moments(law);
    CHECK(m.mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(m.variance == doctest::Approx(var).epsilon(1e-14));
}

TEST_CASE("convolve_n basics") {
    const DiscreteRealLaw unit = convolve_n(two_point(0.0, 0.5, 1.0, 0.5), 0);
    CHECK(unit.size() == 1);
    CHECK(unit.atoms()[0].value == doctest::Approx(0.0));
    CHECK(unit.atoms()[0].prob == doctest::Approx(1.0));

    // three-fold coin flip: binomial(3, 1/2)
    const DiscreteRealLaw bin3 = convolve_n(two_point(0.0, 0.5, 1.0, 0.5), 3);
    REQUIRE(bin3.size() == 4);
    const double expect[4] = {1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(bin3.atoms()[i].value == doctest::Approx(static_cast<double>(i)));
        CHECK(bin3.atoms()[i].prob == doctest::Approx(expect[i]).epsilon(1e-14));
    }
}

TEST_CASE("convolve_n mean and variance scale linearly") {
    std::mt19937_64 rng(7);
    const DiscreteRealLaw law = random_law(rng, 4);
    const Moments base = law_moments(law);
    const Moments five = law_moments(convolve_n(law, 5));
    CHECK(five.mean == doctest::Approx(5.0 * base.mean).epsilon(1e-10));
    CHECK(five.variance == doctest::Approx(5.0 * base.variance).epsilon(1e-10));
}

TEST_CASE("convolution is associative across splits") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const DiscreteRealLaw law = random_law(rng, 3);
        for (int a = 0; a <= 6; ++a) {
            const int b = 6 - a;
            const DiscreteRealLaw whole = convolve_n(law, 6);
            const DiscreteRealLaw split = convolve(convolve_n(law, a), convolve_n(law, b));
            CHECK(laws_close(whole, split, 1e-10));
        }
    }
}

TEST_CASE("convolution handles -inf mass") {
    const DiscreteRealLaw with_inf = DiscreteRealLaw::from_atoms({{std::log(2.0), 0.5}, {-kInf, 0.5}});
    const DiscreteRealLaw sq = convolve(with_inf, with_inf);
    CHECK(sq.size() == 1);
    CHECK(sq.atoms()[0].value == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(sq.atoms()[0].prob == doctest::Approx(0.25));
    CHECK(sq.neg_inf_mass() == doctest::Approx(0.75));
}

TEST_CASE("AtomExplosion triggers on tiny caps") {
    std::mt19937_64 rng(99);
    const DiscreteRealLaw law = random_law(rng, 4);
    CHECK_THROWS_AS(convolve_n(law, 10, 50), AtomExplosion);
}

TEST_CASE("tail queries") {
    const DiscreteRealLaw law = two_point(0.0, 0.25, 1.0, 0.75);
    CHECK(law.tail_geq(0.5) == doctest::Approx(0.75));
    CHECK(law.tail_geq(1.0) == doctest::Approx(0.75));  // tie counts
    CHECK(law.tail_geq(-1.0) == doctest::Approx(1.0));
    CHECK(law.tail_geq(1.5) == doctest::Approx(0.0));
    CHECK(law.log_tail_geq(1.5) == -kInf);

    const DiscreteRealLaw with_inf = DiscreteRealLaw::from_atoms({{0.0, 0.5}, {-kInf, 0.5}});
    CHECK(with_inf.tail_geq(-100.0) == doctest::Approx(0.5));  // -inf never reaches
}

TEST_CASE("tilt with rho_hat = 0 is the identity and requires normalizer 0") {
    const DiscreteRealLaw base = two_point(-0.3, 0.4, 0.7, 0.6);
    const TiltedLaw t = tilt(base, 0.0, 0.0);
    CHECK(laws_close(t.z, base, 1e-15));
    CHECK_THROWS_AS(tilt(base, 0.0, 0.05), NormalizationFailure);
}

TEST_CASE("tilt round trip recovers the base law") {
    const DiscreteRealLaw base = DiscreteRealLaw::from_atoms({{-0.9, 0.2}, {-0.1, 0.3}, {0.4, 0.5}});
    const double rho = 0.6;
    // normalizer that makes the tilt a law: -log E[e^{rho t}]
    double mgf = 0.0;
    for (const Atom& a : base.atoms()) mgf += a.prob * std::exp(rho * a.value);
    const double log_norm = -std::log(mgf);

    const TiltedLaw t = tilt(base, rho, log_norm);
    CHECK(t.z.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    const TiltedLaw back = tilt(t.z, -rho, -log_norm);
    CHECK(laws_close(back.z, base, 1e-9));
}

TEST_CASE("tilt rejects an inconsistent normalizer") {
    const DiscreteRealLaw base = two_point(-1.0, 0.5, 1.0, 0.5);
    CHECK_THROWS_AS(tilt(base, 0.8, 1.0), NormalizationFailure);
}

TEST_CASE("affine transform of a law") {
    const DiscreteRealLaw base = two_point(1.0, 0.5, 2.0, 0.5);
    const DiscreteRealLaw moved = base.affine(0.3, 2.0);  // 0.3 + 2v
    CHECK(moved.atoms()[0].value == doctest::Approx(2.3));
    CHECK(moved.atoms()[1].value == doctest::Approx(4.3));
}
