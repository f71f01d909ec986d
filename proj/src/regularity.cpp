#include "rcbound/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rcbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool metric_differs(double a, double b) {
    return std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b));
}

// D(P||QxW) + rho*E_P[i_s] over the support cells; 0*log 0 = 0.
double type_objective(const Scenario& sc, const DensityTable& table, double rho,
                      const Matrix& p) {
    double obj = 0.0;
    for (std::size_t x = 0; x < sc.nx(); ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y) {
            const double px = p[x][y];
            if (px <= 0.0) continue;
            obj += px * (std::log(px / (sc.qx(x) * sc.w(x, y))) + rho * table.i[x][y]);
        }
    return obj;
}

std::vector<double> y_marginal(const Scenario& sc, const Matrix& p) {
    std::vector<double> m(sc.ny(), 0.0);
    for (std::size_t x = 0; x < sc.nx(); ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y) m[y] += p[x][y];
    return m;
}

}  // namespace

std::vector<int> compute_y1(const Scenario& sc) {
    std::vector<int> y1;
    for (std::size_t y = 0; y < sc.ny(); ++y) {
        bool distinguishes = false;
        for (std::size_t x = 0; x < sc.nx() && !distinguishes; ++x) {
            if (!sc.supported(x, y)) continue;
            for (std::size_t xb = x + 1; xb < sc.nx() && !distinguishes; ++xb) {
                if (!sc.supported(xb, y)) continue;
                if (metric_differs(sc.q(x, y), sc.q(xb, y))) distinguishes = true;
            }
        }
        if (distinguishes) y1.push_back(static_cast<int>(y));
    }
    return y1;
}

bool is_regular(const Scenario& sc) { return !compute_y1(sc).empty(); }

double variance_floor(const Scenario& sc, double s) {
    if (!(s > 0.0)) throw InvalidScenario("variance floor needs s > 0");
    const std::vector<int> y1 = compute_y1(sc);
    if (y1.empty()) throw IrregularScenario("variance floor undefined: Y1 is empty");
    const DensityTable table = build_density_table(sc, s);
    double v = kInf;
    for (int y : y1) v = std::min(v, law_moments(reverse_spectrum(table, y)).variance);
    return v;
}

double conditional_variance_lower_bound(const Scenario& sc, double s,
                                        std::span<const int> y_seq, double delta) {
    const std::vector<int> y1 = compute_y1(sc);
    if (y1.empty()) throw IrregularScenario("F_{n,delta} machinery needs a regular scenario");
    const std::vector<double> type = empirical_type(y_seq, sc.ny());
    double mass = 0.0;
    for (int y : y1) mass += type[static_cast<std::size_t>(y)];
    if (!(mass > delta))
        throw NotInF("sequence has Y1 mass " + std::to_string(mass) +
                     ", not strictly above delta");

    const double v_s = variance_floor(sc, s);
    const double n = static_cast<double>(y_seq.size());
    const double bound = n * delta * v_s;

    const DensityTable table = build_density_table(sc, s);
    std::vector<double> per_symbol(sc.ny(), 0.0);
    for (std::size_t y = 0; y < sc.ny(); ++y)
        if (sc.output_marginal(y) > 0.0)
            per_symbol[y] = law_moments(reverse_spectrum(table, static_cast<int>(y))).variance;
    double exact = 0.0;
    for (int y : y_seq) exact += per_symbol[static_cast<std::size_t>(y)];
    if (exact < bound - 1e-12)
        throw std::logic_error("conditional variance fell below its lower bound");
    return bound;
}

Matrix optimal_joint_type(const Scenario& sc, double rho, double s) {
    const DensityTable table = build_density_table(sc, s);
    Matrix p(sc.nx(), std::vector<double>(sc.ny(), 0.0));
    double m = -kInf;
    for (std::size_t x = 0; x < sc.nx(); ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y)
            if (sc.supported(x, y))
                m = std::max(m, std::log(sc.qx(x) * sc.w(x, y)) - rho * table.i[x][y]);
    double z = 0.0;
    for (std::size_t x = 0; x < sc.nx(); ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y)
            if (sc.supported(x, y)) {
                p[x][y] = std::exp(std::log(sc.qx(x) * sc.w(x, y)) - rho * table.i[x][y] - m);
                z += p[x][y];
            }
    for (auto& row : p)
        for (double& v : row) v /= z;
    return p;
}

double type_exponent_unconstrained(const Scenario& sc, double rho, double s) {
    const DensityTable table = build_density_table(sc, s);
    return type_objective(sc, table, rho, optimal_joint_type(sc, rho, s));
}

double type_exponent_constrained(const Scenario& sc, double rho, double s, double delta) {
    if (!(delta > 0.0)) throw InfeasibleDelta("delta must be positive");
    const DensityTable table = build_density_table(sc, s);
    const Matrix p_star = optimal_joint_type(sc, rho, s);
    const std::vector<int> y1 = compute_y1(sc);
    std::vector<bool> in_y1(sc.ny(), false);
    for (int y : y1) in_y1[static_cast<std::size_t>(y)] = true;

    const auto y1_mass = [&](const Matrix& p) {
        double m = 0.0;
        for (std::size_t x = 0; x < sc.nx(); ++x)
            for (std::size_t y = 0; y < sc.ny(); ++y)
                if (in_y1[y]) m += p[x][y];
        return m;
    };

    if (y1_mass(p_star) <= delta) return type_objective(sc, table, rho, p_star);

    // Feasibility requires a supported cell outside Y1; otherwise the
    // constraint set is empty and the minimum is +infinity.
    bool has_complement = false;
    for (std::size_t x = 0; x < sc.nx() && !has_complement; ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y)
            if (!in_y1[y] && sc.supported(x, y)) {
                has_complement = true;
                break;
            }
    if (!has_complement) return kInf;

    const auto tilted = [&](double lambda) {
        Matrix p = p_star;
        double z = 0.0;
        for (std::size_t x = 0; x < sc.nx(); ++x)
            for (std::size_t y = 0; y < sc.ny(); ++y) {
                if (in_y1[y]) p[x][y] *= std::exp(-lambda);
                z += p[x][y];
            }
        for (auto& row : p)
            for (double& v : row) v /= z;
        return p;
    };

    double hi = 1.0;
    while (y1_mass(tilted(hi)) > delta) {
        hi *= 2.0;
        if (hi > 1e6) break;  // constraint mass decays like e^{-lambda}
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (y1_mass(tilted(mid)) > delta)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
    }
    const Matrix p_opt = tilted(hi);
    if (std::abs(y1_mass(p_opt) - delta) > 1e-9)
        throw std::logic_error("constraint bisection failed to activate");
    return type_objective(sc, table, rho, p_opt);
}

DeltaSelection select_delta(const Scenario& sc, double rho, double s) {
    const std::vector<int> y1 = compute_y1(sc);
    if (y1.empty()) throw IrregularScenario("delta selection needs a regular scenario");
    const Matrix p_star = optimal_joint_type(sc, rho, s);
    const std::vector<double> marg = y_marginal(sc, p_star);
    int y_star = y1.front();
    for (int y : y1)
        if (marg[static_cast<std::size_t>(y)] > marg[static_cast<std::size_t>(y_star)]) y_star = y;

    DeltaSelection sel;
    sel.y_star = y_star;
    sel.delta = marg[static_cast<std::size_t>(y_star)] / 2.0;
    const double unconstrained = type_exponent_unconstrained(sc, rho, s);
    const double constrained = type_exponent_constrained(sc, rho, s, sel.delta);
    sel.exponent_gap = constrained - unconstrained;
    return sel;
}

RegularityReport regularity_report(const Scenario& sc, double rho, double s) {
    RegularityReport rep;
    rep.y1 = compute_y1(sc);
    rep.regular = !rep.y1.empty();
    rep.p_star = optimal_joint_type(sc, rho, s);
    if (rep.regular) {
        rep.v_s = variance_floor(sc, s > 0.0 ? s : 1.0);
        const DeltaSelection sel = select_delta(sc, rho, s);
        rep.y_star = sel.y_star;
        rep.delta = sel.delta;
        rep.exponent_gap = sel.exponent_gap;
    } else {
        rep.v_s = kNaN;
        rep.delta = kNaN;
        rep.exponent_gap = kNaN;
    }
    return rep;
}

}  // namespace rcbound
