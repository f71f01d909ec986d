#ifndef RCBOUND_SCENARIO_HPP
#define RCBOUND_SCENARIO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcbound/errors.hpp"

namespace rcbound {

using Matrix = std::vector<std::vector<double>>;

// Channel transition matrix, stored row-per-input: w[x][y] = W(y|x).
struct Channel {
    std::size_t input_alphabet_size = 0;
    std::size_t output_alphabet_size = 0;
    Matrix w;
};

// Decoding metric q(x,y) >= 0. Its zero pattern must match the channel:
// q(x,y) = 0 exactly when W(y|x) = 0.
struct Metric {
    Matrix q;
};

struct InputDistribution {
    std::vector<double> probs;
};

// A validated (W, q, Q, R) tuple. Immutable after validation; all library
// operations take it by const reference and are safe to call concurrently.
struct Scenario {
    Channel channel;
    Metric metric;
    InputDistribution input;
    double rate = 0.0;  // nats per channel use
    std::vector<std::string> labels_x;  // optional, file-format only
    std::vector<std::string> labels_y;

    std::size_t nx() const { return channel.input_alphabet_size; }
    std::size_t ny() const { return channel.output_alphabet_size; }
    double w(std::size_t x, std::size_t y) const { return channel.w[x][y]; }
    double q(std::size_t x, std::size_t y) const { return metric.q[x][y]; }
    double qx(std::size_t x) const { return input.probs[x]; }

    // True when the pair (x,y) carries probability under Q x W.
    bool supported(std::size_t x, std::size_t y) const {
        return qx(x) > 0.0 && w(x, y) > 0.0;
    }
    // P_Y(y) = sum_x Q(x) W(y|x)
    double output_marginal(std::size_t y) const;
};

// Validates and normalizes raw inputs. Rows of W and Q must sum to 1 within
// 1e-9 (then renormalized exactly), entries must be nonnegative, and the
// metric zero pattern must match the channel. Throws NotStochastic,
// NegativeEntry, ZeroPatternMismatch or InvalidScenario.
Scenario validate_scenario(Matrix w, Matrix q, std::vector<double> input, double rate,
                           std::vector<std::string> labels_x = {},
                           std::vector<std::string> labels_y = {});

// Scenario file format: a JSON object with fields W, q, Q, R and optional
// labels_x / labels_y. Unknown fields are rejected.
Scenario parse_scenario_text(const std::string& json_text);
Scenario load_scenario(const std::string& path);

// Number of codewords at blocklength n: M = ceil(e^{nR}). Values within a
// few ulp of an integer snap to it so that rates like log(2) give M = 2.
double codebook_size_real(int n, double rate);
std::uint64_t codebook_size(int n, double rate);  // throws MemoryBudget if > 2^62

// Joint type: counts[x][y] over the support cells, summing to the
// blocklength it was built for.
struct JointType {
    std::vector<std::vector<std::int64_t>> counts;
    std::int64_t total = 0;
};

// log P[(X,Y) in T^n(P_XY)] under (Q x W)^n, via multinomial coefficients in
// log domain. A positive count on a cell with Q(x)W(y|x) = 0 makes the type
// impossible and the result is -infinity.
double joint_type_log_probability(const Scenario& sc, const JointType& type);

// Enumerates every composition of n over the support cells of Q x W.
// Restartable; at(i) gives random access so workers can split index ranges.
class JointTypeEnumerator {
  public:
    JointTypeEnumerator(const Scenario& sc, int n);

    std::uint64_t count() const { return count_; }
    std::size_t support_cells() const { return cells_.size(); }
    JointType at(std::uint64_t index) const;

    template <typename F>
    void for_each(F&& fn) const {
        std::vector<std::int64_t> parts(cells_.size(), 0);
        walk(0, n_, parts, fn);
    }

  private:
    template <typename F>
    void walk(std::size_t cell, std::int64_t remaining, std::vector<std::int64_t>& parts,
              F& fn) const {
        if (cell + 1 == parts.size()) {
            parts[cell] = remaining;
            fn(make_type(parts));
            return;
        }
        for (std::int64_t c = 0; c <= remaining; ++c) {
            parts[cell] = c;
            walk(cell + 1, remaining - c, parts, fn);
        }
    }

    JointType make_type(const std::vector<std::int64_t>& parts) const;

    std::size_t nx_ = 0, ny_ = 0;
    std::int64_t n_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cells_;
    std::uint64_t count_ = 0;
};

JointTypeEnumerator enumerate_joint_types(const Scenario& sc, int n);

// Normalized symbol counts of a sequence. Throws SymbolOutOfRange for
// out-of-alphabet symbols and rejects empty input.
std::vector<double> empirical_type(std::span<const int> seq, std::size_t alphabet_size);

}  // namespace rcbound

#endif
