#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "rcbound/bounds.hpp"
#include "rcbound/density.hpp"

using namespace rcbound;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Direct map-based convolution for cross-checks; independent of the library's
// law machinery.
std::map<std::int64_t, double> scale_to_grid(const DiscreteRealLaw& law, double grid) {
    std::map<std::int64_t, double> m;
    for (const Atom& a : law.atoms())
        m[static_cast<std::int64_t>(std::llround(a.value / grid))] += a.prob;
    return m;
}

}  // namespace

TEST_CASE("rcu_exact on the noiseless channel at n=1, M=2") {
    // Both supported cells see one competitor tie with probability 1/2, so
    // the four-cell enumeration of the bound gives exactly 1/2.
    const Scenario sc = fixtures::noiseless(fixtures::rate_for_m(1, 2));
    const double oracle = oracles::brute_force_rcu(sc, 1.0, 1, 2);
    CHECK(oracle == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::exp(rcu_exact(sc, 1.0, 1)) == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("rcu_exact matches brute force on every fixture for n <= 3, M in 2..4") {
    const auto t0 = std::chrono::steady_clock::now();
    for (int fixture = 0; fixture < 3; ++fixture) {
        for (int n = 1; n <= 3; ++n) {
            for (int m = 2; m <= 4; ++m) {
                const double rate = fixtures::rate_for_m(n, m);
                const Scenario sc = fixture == 0   ? fixtures::bsc(rate)
                                    : fixture == 1 ? fixtures::bec(rate)
                                                   : fixtures::mismatched23(rate);
                for (double s : {1.0, 0.6}) {
                    const double impl = std::exp(rcu_exact(sc, s, n));
                    const double oracle =
                        oracles::brute_force_rcu(sc, s, n, static_cast<std::uint64_t>(m));
                    CHECK(impl == doctest::Approx(oracle).epsilon(1e-12));
                }
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 10.0);
}

TEST_CASE("rcu_exact with one codeword has no competitors") {
    const Scenario sc = fixtures::bsc(0.0);  // M = ceil(e^0) = 1
    CHECK(rcu_exact(sc, 1.0, 4) == -kInf);
}

TEST_CASE("rcu_exact never exceeds the exponential bound") {
    for (const Scenario& base : {fixtures::bsc(), fixtures::bec(), fixtures::mismatched23()}) {
        const ExponentReport rep = error_exponent(base);
        for (int n : {2, 8, 32, 64}) {
            const double rcu = rcu_exact(base, rep.s_star, n);
            CHECK(rcu <= gallager_bound(rep.e_r, n) + 1e-12);
        }
    }
}

TEST_CASE("optimizing s does not hurt the bound on the mismatched fixture") {
    const Scenario sc = fixtures::mismatched23(0.12);
    const ExponentReport rep = error_exponent(sc);
    for (int n : {2, 4, 8}) {
        CHECK(rcu_exact(sc, rep.s_star, n) <= rcu_exact(sc, 1.0, n) + 1e-12);
    }
}

TEST_CASE("rcu_exact budget refusal") {
    const Scenario sc = fixtures::mismatched23(0.1);
    RcuBudget tiny;
    tiny.max_y_types = 10;
    CHECK_THROWS_AS(rcu_exact(sc, 1.0, 100, tiny), BudgetExceeded);
}

TEST_CASE("gallager bound") {
    CHECK(gallager_bound(0.0, 50) == doctest::Approx(0.0));  // e_r = 0: bound is 1

    const Scenario sc = fixtures::bsc(0.2);
    const ExponentReport rep = error_exponent(sc);
    CHECK(gallager_bound(sc, 100) == doctest::Approx(-100.0 * rep.e_r).epsilon(1e-12));

    double prev = 1.0;
    for (int n : {10, 20, 40}) {
        const double b = gallager_bound(rep.e_r, n);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("berry_esseen_tail on the symmetric two-point law") {
    const DiscreteRealLaw law = DiscreteRealLaw::from_atoms({{-1.0, 0.5}, {1.0, 0.5}});
    const TailComparison t = berry_esseen_tail(law, 10, 0.0);

    // independent direct sum: sum_{k: 2k-10 > 0} C(10,k) 2^{-10} e^{-(2k-10)}
    double lhs = 0.0;
    double c = 1.0;  // C(10,0)
    for (int k = 0; k <= 10; ++k) {
        const double v = 2.0 * k - 10.0;
        if (v > 0.0) lhs += c * std::pow(0.5, 10) * std::exp(-v);
        c = c * (10 - k) / (k + 1);
    }
    CHECK(t.lhs == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(t.lhs <= t.rhs);

    // t beyond the support: lhs = 0
    const TailComparison far = berry_esseen_tail(law, 10, 11.0);
    CHECK(far.lhs == doctest::Approx(0.0));
    CHECK(far.log_lhs == -kInf);

    CHECK_THROWS_AS(berry_esseen_tail(DiscreteRealLaw::from_atoms({{2.0, 1.0}}), 5, 0.0),
                    ZeroVariance);
}

TEST_CASE("berry_esseen_tail slack at the mean threshold") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> vd(-1.5, 1.5);
    const DiscreteRealLaw law =
        DiscreteRealLaw::from_atoms({{vd(rng), 0.3}, {vd(rng), 0.45}, {vd(rng), 0.25}});
    const Moments m = law_moments(law);
    const TailComparison t = berry_esseen_tail(law, 50, 50.0 * m.mean);
    CHECK(t.lhs <= t.rhs);
    CHECK(t.rhs > 0.0);
}

TEST_CASE("berry_esseen_tail holds on 100 randomized instances") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> vd(-2.0, 2.0);
    std::uniform_int_distribution<int> kd(2, 4);
    int checked = 0;
    while (checked < 100) {
        const int k = kd(rng);
        const int n_max = k == 4 ? 60 : 200;
        const int n = 5 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - 4));
        std::vector<Atom> atoms;
        double tot = 0.0;
        for (int i = 0; i < k; ++i) {
            const double p = 0.05 + std::generate_canonical<double, 53>(rng);
            atoms.push_back({vd(rng), p});
            tot += p;
        }
        for (Atom& a : atoms) a.prob /= tot;
        const DiscreteRealLaw law = DiscreteRealLaw::from_atoms(std::move(atoms));
        const Moments m = law_moments(law);
        if (!(m.variance > 1e-6)) continue;

        const double sigma = std::sqrt(static_cast<double>(n) * m.variance);
        const double t = static_cast<double>(n) * m.mean +
                         (std::generate_canonical<double, 53>(rng) * 6.0 - 3.0) * sigma;
        const TailComparison cmp = berry_esseen_tail(law, n, t);
        CHECK(cmp.log_lhs <= cmp.log_rhs + 1e-12);
        ++checked;
    }
}

TEST_CASE("theorem_shape curves") {
    const std::vector<int> grid = {60, 120, 240, 480};

    // IRR_LOW: alpha(n) = 1, so the shape curve equals the exponential bound
    const Scenario bec = fixtures::bec(0.10);
    const ExponentReport rep = error_exponent(bec);
    REQUIRE(rep.regime == Regime::IRR_LOW);
    const BoundCurve shape = theorem_shape(rep, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(shape.log_bound[i] ==
              doctest::Approx(gallager_bound(rep.e_r, grid[i])).epsilon(1e-12));

    // REG_HIGH: removing the exponential part leaves slope -(1+rho)/2 exactly
    const Scenario bsc = fixtures::bsc(0.2333);
    const ExponentReport rb = error_exponent(bsc);
    REQUIRE(rb.regime == Regime::REG_HIGH);
    const BoundCurve sb = theorem_shape(rb, grid);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double num = (sb.log_bound[i] + grid[i] * rb.e_r) -
                           (sb.log_bound[0] + grid[0] * rb.e_r);
        const double den = std::log(static_cast<double>(grid[i]) / grid[0]);
        CHECK(num / den == doctest::Approx(-(1.0 + rb.rho_hat) / 2.0).epsilon(1e-12));
    }

    // REG_LOW / IRR_HIGH have slope -1/2
    const ExponentReport rl = error_exponent(fixtures::bsc(0.05));
    REQUIRE(rl.regime == Regime::REG_LOW);
    CHECK(rl.alpha_order == doctest::Approx(-0.5));
    const ExponentReport ih = error_exponent(fixtures::bec(0.29));
    REQUIRE(ih.regime == Regime::IRR_HIGH);
    CHECK(ih.alpha_order == doctest::Approx(-0.5));
}

TEST_CASE("scaled-grid convolution agrees with the law convolution") {
    const DiscreteRealLaw law = DiscreteRealLaw::from_atoms({{-0.5, 0.3}, {0.5, 0.7}});
    const DiscreteRealLaw c8 = convolve_n(law, 8);
    auto grid = scale_to_grid(law, 0.5);
    std::map<std::int64_t, double> acc{{0, 1.0}};
    for (int i = 0; i < 8; ++i) {
        std::map<std::int64_t, double> next;
        for (const auto& [va, pa] : acc)
            for (const auto& [vb, pb] : grid) next[va + vb] += pa * pb;
        acc = std::move(next);
    }
    REQUIRE(c8.size() == acc.size());
    std::size_t i = 0;
    for (const auto& [v, p] : acc) {
        CHECK(c8.atoms()[i].value == doctest::Approx(0.5 * static_cast<double>(v)).epsilon(1e-12));
        CHECK(c8.atoms()[i].prob == doctest::Approx(p).epsilon(1e-12));
        ++i;
    }
}
