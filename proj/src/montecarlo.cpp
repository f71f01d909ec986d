#include "rcbound/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rcbound/density.hpp"
#include "rcu_support.hpp"

namespace rcbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
    splitmix64(s);  // decorrelate neighboring streams
    state_ = s;
}

std::uint64_t TrialRng::next_u64() { return splitmix64(state_); }

double TrialRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t TrialRng::categorical(std::span<const double> probs) {
    const double u = next_unit();
    double c = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        c += probs[i];
        if (u < c) return i;
    }
    return probs.size() - 1;  // guard against rounding in the CDF
}

SimEstimate simulate_pe(const Scenario& sc, int n, long long trials, std::uint64_t seed) {
    if (n < 1) throw InvalidScenario("blocklength must be >= 1");
    if (trials < 1) throw InvalidScenario("trials must be >= 1");
    const std::uint64_t m_count = codebook_size(n, sc.rate);
    if (m_count * static_cast<std::uint64_t>(n) > 50'000'000ULL)
        throw MemoryBudget("n*M too large for per-trial codebook simulation");

    // log metrics; -inf marks q = 0 cells, which never win against the
    // transmitted codeword's finite metric.
    Matrix log_q(sc.nx(), std::vector<double>(sc.ny(), -kInf));
    for (std::size_t x = 0; x < sc.nx(); ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y)
            if (sc.q(x, y) > 0.0) log_q[x][y] = std::log(sc.q(x, y));

    const std::size_t m = static_cast<std::size_t>(m_count);
    std::vector<int> codebook(m * static_cast<std::size_t>(n));
    std::vector<int> received(static_cast<std::size_t>(n));
    std::vector<std::size_t> ties;
    ties.reserve(m);

    long long errors = 0;
    for (long long trial = 0; trial < trials; ++trial) {
        TrialRng rng(seed, static_cast<std::uint64_t>(trial));

        for (std::size_t j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i)
                codebook[j * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                    static_cast<int>(rng.categorical(sc.input.probs));

        const std::size_t msg = std::min<std::size_t>(
            m - 1, static_cast<std::size_t>(rng.next_unit() * static_cast<double>(m)));

        for (int i = 0; i < n; ++i) {
            const int x = codebook[msg * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
            received[static_cast<std::size_t>(i)] =
                static_cast<int>(rng.categorical(sc.channel.w[static_cast<std::size_t>(x)]));
        }

        // Max-metric decoding; metrics equal within relative 1e-12 tie.
        double best = -kInf;
        ties.clear();
        for (std::size_t j = 0; j < m; ++j) {
            double metric = 0.0;
            for (int i = 0; i < n; ++i) {
                const int x = codebook[j * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
                metric += log_q[static_cast<std::size_t>(x)]
                               [static_cast<std::size_t>(received[static_cast<std::size_t>(i)])];
            }
            if (ties.empty()) {
                best = metric;
                ties.push_back(j);
                continue;
            }
            const double tol = std::isinf(best) ? 0.0 : 1e-12 * std::max(1.0, std::abs(best));
            if (metric > best + tol) {
                best = metric;
                ties.clear();
                ties.push_back(j);
            } else if (metric >= best - tol) {
                ties.push_back(j);
            }
        }
        std::size_t decoded = ties.front();
        if (ties.size() > 1) {
            const std::size_t pick = std::min<std::size_t>(
                ties.size() - 1,
                static_cast<std::size_t>(rng.next_unit() * static_cast<double>(ties.size())));
            decoded = ties[pick];
        }
        if (decoded != msg) ++errors;
    }

    SimEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.p_hat = static_cast<double>(errors) / static_cast<double>(trials);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
    return est;
}

SimEstimate rcu_monte_carlo(const Scenario& sc, double s, int n, long long trials,
                            std::uint64_t seed) {
    if (n < 1) throw InvalidScenario("blocklength must be >= 1");
    if (trials < 1) throw InvalidScenario("trials must be >= 1");
    const double log_m1 = detail::log_m_minus_one(n, sc.rate);

    const DensityTable table = build_density_table(sc, s);
    const detail::ColumnLaws cols(sc, table);
    std::vector<int> symbol_to_column(sc.ny(), -1);
    for (std::size_t c = 0; c < cols.symbols.size(); ++c)
        symbol_to_column[static_cast<std::size_t>(cols.symbols[c])] = static_cast<int>(c);

    // Per-column competitor powers, shared by all output types.
    std::vector<detail::PowerCache> powers;
    powers.reserve(cols.symbols.size());
    for (const auto& law : cols.competitor)
        powers.emplace_back(law, kDefaultAtomCap, 200'000'000);

    // Cache of tail tables keyed by the output type.
    std::map<std::vector<int>, detail::TailTable> tails;
    const auto tail_for = [&](const std::vector<int>& y_type) -> const detail::TailTable& {
        auto it = tails.find(y_type);
        if (it != tails.end()) return it->second;
        DiscreteRealLaw law = DiscreteRealLaw::from_atoms({{0.0, 1.0}});
        for (std::size_t c = 0; c < y_type.size(); ++c)
            if (y_type[c] > 0) law = convolve(law, powers[c].power(y_type[c]));
        return tails.emplace(y_type, detail::TailTable(law)).first->second;
    };

    std::vector<int> y_type(cols.symbols.size());
    long double sum = 0.0, sum_sq = 0.0;
    for (long long trial = 0; trial < trials; ++trial) {
        TrialRng rng(seed, static_cast<std::uint64_t>(trial));
        std::fill(y_type.begin(), y_type.end(), 0);
        double t = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::size_t x = rng.categorical(sc.input.probs);
            const std::size_t y = rng.categorical(sc.channel.w[x]);
            t += table.i[x][y];
            ++y_type[static_cast<std::size_t>(symbol_to_column[y])];
        }
        const double log_u = log_m1 + tail_for(y_type).log_tail_geq(t);
        const double v = log_u >= 0.0 ? 1.0 : std::exp(log_u);
        sum += v;
        sum_sq += v * v;
    }

    SimEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.p_hat = static_cast<double>(sum / static_cast<long double>(trials));
    if (trials > 1) {
        const long double var =
            (sum_sq - sum * sum / static_cast<long double>(trials)) /
            static_cast<long double>(trials - 1);
        est.std_err = std::sqrt(std::max(0.0, static_cast<double>(var)) /
                                static_cast<double>(trials));
    }
    return est;
}

PrefactorFit prefactor_fit(const BoundCurve& curve, double e_r, double predicted_slope) {
    if (curve.n_values.size() != curve.log_bound.size())
        throw DegenerateFit("curve arrays have different lengths");
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < curve.n_values.size(); ++k) {
        const double lb = curve.log_bound[k];
        if (!std::isfinite(lb)) throw DegenerateFit("curve has a non-finite bound value");
        xs.push_back(std::log(static_cast<double>(curve.n_values[k])));
        ys.push_back(lb + static_cast<double>(curve.n_values[k]) * e_r);
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4)
        throw DegenerateFit("prefactor fit needs at least 4 distinct blocklengths");

    const double m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    const double denom = m * sxx - sx * sx;
    PrefactorFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    double rss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (fit.intercept + fit.slope * xs[k]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / m);
    fit.predicted_slope = predicted_slope;
    return fit;
}

}  // namespace rcbound
