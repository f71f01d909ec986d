#include "rcbound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace rcbound {

namespace {

constexpr double kStochasticTol = 1e-9;

void check_nonnegative(const Matrix& m, const char* name) {
    for (const auto& row : m)
        for (double v : row)
            if (v < 0.0 || !std::isfinite(v))
                throw NegativeEntry(std::string(name) + " has a negative or non-finite entry");
}

void normalize_rows(Matrix& m, const char* name) {
    for (auto& row : m) {
        double sum = 0.0;
        for (double v : row) sum += v;
        if (std::abs(sum - 1.0) > kStochasticTol)
            throw NotStochastic(std::string(name) + " row sums to " + std::to_string(sum));
        for (double& v : row) v /= sum;
    }
}

}  // namespace

double Scenario::output_marginal(std::size_t y) const {
    double p = 0.0;
    for (std::size_t x = 0; x < nx(); ++x) p += qx(x) * w(x, y);
    return p;
}

Scenario validate_scenario(Matrix w, Matrix q, std::vector<double> input, double rate,
                           std::vector<std::string> labels_x,
                           std::vector<std::string> labels_y) {
    if (w.empty() || w.front().empty()) throw InvalidScenario("W must be a non-empty matrix");
    const std::size_t nx = w.size();
    const std::size_t ny = w.front().size();
    for (const auto& row : w)
        if (row.size() != ny) throw InvalidScenario("W rows have inconsistent lengths");
    if (q.size() != nx) throw InvalidScenario("q must have the same shape as W");
    for (const auto& row : q)
        if (row.size() != ny) throw InvalidScenario("q must have the same shape as W");
    if (input.size() != nx) throw InvalidScenario("Q length must match the input alphabet");
    if (!std::isfinite(rate) || rate < 0.0) throw InvalidScenario("rate must be >= 0");
    if (!labels_x.empty() && labels_x.size() != nx)
        throw InvalidScenario("labels_x length must match the input alphabet");
    if (!labels_y.empty() && labels_y.size() != ny)
        throw InvalidScenario("labels_y length must match the output alphabet");

    check_nonnegative(w, "W");
    check_nonnegative(q, "q");
    for (double v : input)
        if (v < 0.0 || !std::isfinite(v)) throw NegativeEntry("Q has a negative or non-finite entry");

    normalize_rows(w, "W");
    {
        double sum = 0.0;
        for (double v : input) sum += v;
        if (std::abs(sum - 1.0) > kStochasticTol)
            throw NotStochastic("Q sums to " + std::to_string(sum));
        for (double& v : input) v /= sum;
    }

    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            const bool wz = (w[x][y] == 0.0);
            const bool qz = (q[x][y] == 0.0);
            if (wz != qz)
                throw ZeroPatternMismatch("q and W zero patterns disagree at (x=" +
                                          std::to_string(x) + ", y=" + std::to_string(y) + ")");
        }

    Scenario sc;
    sc.channel = Channel{nx, ny, std::move(w)};
    sc.metric = Metric{std::move(q)};
    sc.input = InputDistribution{std::move(input)};
    sc.rate = rate;
    sc.labels_x = std::move(labels_x);
    sc.labels_y = std::move(labels_y);
    return sc;
}

namespace {

Matrix parse_matrix(const nlohmann::json& j, const char* name) {
    if (!j.is_array()) throw ParseError(std::string(name) + " must be an array of rows");
    Matrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError(std::string(name) + " rows must be arrays");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) throw ParseError(std::string(name) + " entries must be numbers");
            r.push_back(v.get<double>());
        }
        m.push_back(std::move(r));
    }
    return m;
}

}  // namespace

Scenario parse_scenario_text(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario file must contain a JSON object");

    static const std::vector<std::string> known = {"W", "q", "Q", "R", "labels_x", "labels_y"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ParseError("unknown field '" + it.key() + "' in scenario file");
    for (const char* req : {"W", "q", "Q", "R"})
        if (!doc.contains(req)) throw ParseError(std::string("missing field '") + req + "'");

    Matrix w = parse_matrix(doc["W"], "W");
    Matrix q = parse_matrix(doc["q"], "q");
    if (!doc["Q"].is_array()) throw ParseError("Q must be an array");
    std::vector<double> input;
    for (const auto& v : doc["Q"]) {
        if (!v.is_number()) throw ParseError("Q entries must be numbers");
        input.push_back(v.get<double>());
    }
    if (!doc["R"].is_number()) throw ParseError("R must be a number");
    const double rate = doc["R"].get<double>();

    std::vector<std::string> lx, ly;
    if (doc.contains("labels_x"))
        for (const auto& v : doc["labels_x"]) lx.push_back(v.get<std::string>());
    if (doc.contains("labels_y"))
        for (const auto& v : doc["labels_y"]) ly.push_back(v.get<std::string>());

    return validate_scenario(std::move(w), std::move(q), std::move(input), rate,
                             std::move(lx), std::move(ly));
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

double codebook_size_real(int n, double rate) {
    const double exponent = static_cast<double>(n) * rate;
    if (exponent >= 40.0) return std::exp(exponent);  // +-1 below double resolution
    const double v = std::exp(exponent);
    const double r = std::round(v);
    if (std::abs(v - r) <= 4.0 * std::numeric_limits<double>::epsilon() * v) return r;
    return std::ceil(v);
}

std::uint64_t codebook_size(int n, double rate) {
    const double m = codebook_size_real(n, rate);
    if (m > 4.6e18) throw MemoryBudget("codebook size exceeds 2^62 messages");
    return static_cast<std::uint64_t>(m);
}

double joint_type_log_probability(const Scenario& sc, const JointType& type) {
    if (type.counts.size() != sc.nx())
        throw InvalidScenario("joint type shape does not match the scenario");
    std::int64_t total = 0;
    double log_p = 0.0;
    bool impossible = false;
    for (std::size_t x = 0; x < sc.nx(); ++x) {
        if (type.counts[x].size() != sc.ny())
            throw InvalidScenario("joint type shape does not match the scenario");
        for (std::size_t y = 0; y < sc.ny(); ++y) {
            const std::int64_t c = type.counts[x][y];
            if (c < 0) throw InvalidScenario("joint type has a negative count");
            if (c == 0) continue;
            total += c;
            const double p = sc.qx(x) * sc.w(x, y);
            if (p == 0.0) {
                impossible = true;
                continue;
            }
            log_p += static_cast<double>(c) * std::log(p) - std::lgamma(static_cast<double>(c) + 1.0);
        }
    }
    if (total != type.total)
        throw InvalidScenario("joint type counts do not sum to its declared blocklength");
    if (impossible) return -std::numeric_limits<double>::infinity();
    log_p += std::lgamma(static_cast<double>(total) + 1.0);
    return log_p;
}

namespace {

// C(a, b) in 128-bit, throwing if the value does not fit in uint64.
std::uint64_t binomial_u64(std::int64_t a, std::int64_t b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        r = r * static_cast<unsigned __int128>(a - b + i);
        r /= static_cast<unsigned __int128>(i);
        if (r > static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max()))
            throw BudgetExceeded("type count exceeds 2^64");
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

JointTypeEnumerator::JointTypeEnumerator(const Scenario& sc, int n) : nx_(sc.nx()), ny_(sc.ny()), n_(n) {
    if (n < 1) throw InvalidScenario("blocklength must be >= 1");
    for (std::size_t x = 0; x < nx_; ++x)
        for (std::size_t y = 0; y < ny_; ++y)
            if (sc.supported(x, y)) cells_.emplace_back(x, y);
    if (cells_.empty()) throw InvalidScenario("scenario has no supported (x,y) cells");
    count_ = binomial_u64(n_ + static_cast<std::int64_t>(cells_.size()) - 1,
                          static_cast<std::int64_t>(cells_.size()) - 1);
}

JointType JointTypeEnumerator::make_type(const std::vector<std::int64_t>& parts) const {
    JointType t;
    t.counts.assign(nx_, std::vector<std::int64_t>(ny_, 0));
    for (std::size_t i = 0; i < cells_.size(); ++i)
        t.counts[cells_[i].first][cells_[i].second] = parts[i];
    t.total = n_;
    return t;
}

JointType JointTypeEnumerator::at(std::uint64_t index) const {
    if (index >= count_) throw InvalidScenario("joint type index out of range");
    const std::size_t k = cells_.size();
    std::vector<std::int64_t> parts(k, 0);
    std::int64_t remaining = n_;
    for (std::size_t cell = 0; cell + 1 < k; ++cell) {
        // Enumeration order: the count of cell i runs 0..remaining, outermost first.
        for (std::int64_t c = 0;; ++c) {
            const std::uint64_t block =
                binomial_u64(remaining - c + static_cast<std::int64_t>(k - cell) - 2,
                             static_cast<std::int64_t>(k - cell) - 2);
            if (index < block) {
                parts[cell] = c;
                remaining -= c;
                break;
            }
            index -= block;
        }
    }
    parts[k - 1] = remaining;
    return make_type(parts);
}

JointTypeEnumerator enumerate_joint_types(const Scenario& sc, int n) {
    return JointTypeEnumerator(sc, n);
}

std::vector<double> empirical_type(std::span<const int> seq, std::size_t alphabet_size) {
    if (seq.empty()) throw InvalidScenario("cannot take the type of an empty sequence");
    std::vector<double> counts(alphabet_size, 0.0);
    for (int s : seq) {
        if (s < 0 || static_cast<std::size_t>(s) >= alphabet_size)
            throw SymbolOutOfRange("symbol " + std::to_string(s) + " outside alphabet");
        counts[static_cast<std::size_t>(s)] += 1.0;
    }
    for (double& c : counts) c /= static_cast<double>(seq.size());
    return counts;
}

}  // namespace rcbound
