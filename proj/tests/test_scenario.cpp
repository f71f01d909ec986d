#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "rcbound/scenario.hpp"

using namespace rcbound;

namespace {

// Independent stars-and-bars count via Pascal's rule.
std::uint64_t pascal_binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    std::vector<std::uint64_t> row(static_cast<std::size_t>(a) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= a; ++i)
        for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    return row[static_cast<std::size_t>(b)];
}

// 1 x k channel: one input, k equiprobable outputs -> k support cells.
Scenario one_by_k(int k) {
    Matrix w(1, std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
    return validate_scenario(w, w, {1.0}, 0.1);
}

}  // namespace

TEST_CASE("validate_scenario accepts the standard fixtures") {
    CHECK_NOTHROW(fixtures::bsc());
    CHECK_NOTHROW(fixtures::bec());
    CHECK_NOTHROW(fixtures::mismatched23());

    const Scenario sc = fixtures::bsc();
    CHECK(sc.nx() == 2);
    CHECK(sc.ny() == 2);
    CHECK(sc.rate == doctest::Approx(0.30));
}

TEST_CASE("validate_scenario rejects a broken zero pattern") {
    // BEC with q(0,e) = 0 while W(e|0) = 0.5
    Matrix w = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};
    Matrix q = {{0.5, 0.0, 0.0}, {0.0, 0.5, 0.5}};
    CHECK_THROWS_AS(validate_scenario(w, q, {0.5, 0.5}, 0.1), ZeroPatternMismatch);
    // and the symmetric violation: q > 0 where W = 0
    Matrix q2 = {{0.5, 0.5, 0.1}, {0.0, 0.5, 0.5}};
    CHECK_THROWS_AS(validate_scenario(w, q2, {0.5, 0.5}, 0.1), ZeroPatternMismatch);
}

TEST_CASE("validate_scenario stochasticity and entry checks") {
    Matrix w = {{0.6, 0.5}, {0.5, 0.5}};
    CHECK_THROWS_AS(validate_scenario(w, w, {0.5, 0.5}, 0.1), NotStochastic);

    Matrix neg = {{1.1, -0.1}, {0.5, 0.5}};
    CHECK_THROWS_AS(validate_scenario(neg, neg, {0.5, 0.5}, 0.1), NegativeEntry);

    Matrix ok = {{0.89, 0.11}, {0.11, 0.89}};
    CHECK_THROWS_AS(validate_scenario(ok, ok, {0.4, 0.5}, 0.1), NotStochastic);
    CHECK_THROWS_AS(validate_scenario(ok, ok, {0.5, 0.5}, -0.1), InvalidScenario);

    // rows within 1e-9 of stochastic are renormalized
    Matrix close = {{0.89 + 4e-10, 0.11}, {0.11, 0.89}};
    const Scenario sc = validate_scenario(close, ok, {0.5, 0.5}, 0.1);
    double sum = 0.0;
    for (double v : sc.channel.w[0]) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("joint_type_log_probability single-letter and product cases") {
    const Scenario sc = fixtures::bsc();

    JointType t1{{{1, 0}, {0, 0}}, 1};
    CHECK(joint_type_log_probability(sc, t1) == doctest::Approx(std::log(0.5 * 0.89)).epsilon(1e-14));

    JointType t2{{{2, 0}, {0, 0}}, 2};
    CHECK(joint_type_log_probability(sc, t2) ==
          doctest::Approx(2.0 * std::log(0.445)).epsilon(1e-14));

    // impossible type: mass on a cell with W = 0
    const Scenario bec = fixtures::bec();
    JointType bad{{{0, 0, 1}, {0, 0, 0}}, 1};
    CHECK(joint_type_log_probability(bec, bad) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("joint_type_log_probability matches exhaustive sequence enumeration at n=4") {
    const Scenario sc = fixtures::bsc();
    JointType t{{{1, 1}, {1, 1}}, 4};

    // Oracle: sum (QxW)^4 over all (x,y) sequence pairs with this joint type.
    const int n = 4;
    double total = 0.0;
    for (int xm = 0; xm < (1 << n); ++xm)
        for (int ym = 0; ym < (1 << n); ++ym) {
            int counts[2][2] = {{0, 0}, {0, 0}};
            double p = 1.0;
            for (int i = 0; i < n; ++i) {
                const int x = (xm >> i) & 1;
                const int y = (ym >> i) & 1;
                counts[x][y]++;
                p *= sc.qx(static_cast<std::size_t>(x)) *
                     sc.w(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
            }
            if (counts[0][0] == 1 && counts[0][1] == 1 && counts[1][0] == 1 && counts[1][1] == 1)
                total += p;
        }
    CHECK(std::exp(joint_type_log_probability(sc, t)) == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("enumerate_joint_types counts and coverage") {
    CHECK(enumerate_joint_types(fixtures::bsc(), 1).count() == 4);
    CHECK(enumerate_joint_types(fixtures::bsc(), 2).count() == 10);
    CHECK(enumerate_joint_types(fixtures::bec(), 3).count() == 20);  // 4 support cells

    // counts match stars and bars for k <= 6, n <= 30
    for (int k = 2; k <= 6; ++k) {
        const Scenario sc = one_by_k(k);
        for (int n : {1, 2, 3, 5, 12, 30}) {
            const auto e = enumerate_joint_types(sc, n);
            CHECK(e.count() == pascal_binomial(n + k - 1, k - 1));
        }
    }
}

TEST_CASE("enumerate_joint_types yields each type once and random access agrees") {
    const Scenario sc = fixtures::bec();
    const auto e = enumerate_joint_types(sc, 4);
    std::map<std::vector<std::int64_t>, int> seen;
    std::uint64_t idx = 0;
    e.for_each([&](const JointType& t) {
        std::vector<std::int64_t> flat;
        for (const auto& row : t.counts)
            for (std::int64_t c : row) flat.push_back(c);
        seen[flat]++;
        const JointType r = e.at(idx++);
        CHECK(r.counts == t.counts);
    });
    CHECK(seen.size() == e.count());
    for (const auto& [flat, times] : seen) CHECK(times == 1);
}

TEST_CASE("type probabilities sum to one over the full enumeration") {
    const Scenario sc = fixtures::bsc();
    for (int n : {1, 4, 8, 12}) {
        double total = 0.0;
        enumerate_joint_types(sc, n).for_each([&](const JointType& t) {
            total += std::exp(joint_type_log_probability(sc, t));
        });
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("empirical_type basics") {
    const std::vector<int> y = {0, 0, 1};
    const auto t = empirical_type(y, 2);
    CHECK(t[0] == doctest::Approx(2.0 / 3.0));
    CHECK(t[1] == doctest::Approx(1.0 / 3.0));

    const std::vector<int> ee = {1, 1};  // e,e over the BEC output alphabet {0,e,1}
    const auto te = empirical_type(ee, 3);
    CHECK(te[1] == doctest::Approx(1.0));

    const std::vector<int> bad = {0, 3};
    CHECK_THROWS_AS(empirical_type(bad, 2), SymbolOutOfRange);
    const std::vector<int> empty;
    CHECK_THROWS(empirical_type(empty, 2));
}

TEST_CASE("scenario JSON round trip and rejection of unknown fields") {
    const Scenario sc = parse_scenario_text(R"({
        "W": [[0.89, 0.11], [0.11, 0.89]],
        "q": [[0.89, 0.11], [0.11, 0.89]],
        "Q": [0.5, 0.5],
        "R": 0.3
    })");
    CHECK(sc.rate == doctest::Approx(0.3));

    CHECK_THROWS_AS(parse_scenario_text(R"({"W": [[1.0]], "q": [[1.0]], "Q": [1.0],
                                         "R": 0.1, "bogus": 3})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario_text("not json at all"), ParseError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"W": [[1.0]], "q": [[1.0]], "Q": [1.0]})"),
                    ParseError);
}

TEST_CASE("codebook size derivation") {
    CHECK(codebook_size(1, 0.6) == 2);                 // e^0.6 = 1.82
    CHECK(codebook_size(1, std::log(2.0)) == 2);       // integer boundary snaps
    CHECK(codebook_size(3, fixtures::rate_for_m(3, 4)) == 4);
    CHECK(codebook_size(1, 0.0) == 1);
}
