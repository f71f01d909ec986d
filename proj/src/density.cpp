#include "rcbound/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rcbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log sum_x exp(terms[x]) with the usual max shift; -inf terms drop out.
double log_sum_exp(const std::vector<double>& terms) {
    double m = -kInf;
    for (double t : terms) m = std::max(m, t);
    if (m == -kInf) return -kInf;
    double s = 0.0;
    for (double t : terms)
        if (t != -kInf) s += std::exp(t - m);
    return m + std::log(s);
}

}  // namespace

DensityTable build_density_table(const Scenario& sc, double s) {
    if (!(s >= 0.0)) throw InvalidScenario("tilt s must be >= 0");
    DensityTable t;
    t.s = s;
    t.i.assign(sc.nx(), std::vector<double>(sc.ny(), -kInf));
    t.v.assign(sc.nx(), std::vector<double>(sc.ny(), 0.0));

    for (std::size_t y = 0; y < sc.ny(); ++y) {
        // log denominator: log sum_xb Q(xb) q(xb,y)^s, in log domain so large
        // s cannot overflow. q^0 = 1 by convention, including q = 0.
        std::vector<double> terms;
        terms.reserve(sc.nx());
        for (std::size_t x = 0; x < sc.nx(); ++x) {
            if (sc.qx(x) <= 0.0) continue;
            const double q = sc.q(x, y);
            if (q == 0.0 && s > 0.0) continue;
            terms.push_back(std::log(sc.qx(x)) + (s == 0.0 ? 0.0 : s * std::log(q)));
        }
        const double log_denom = log_sum_exp(terms);
        if (log_denom == -kInf)
            throw DegenerateColumn("output symbol " + std::to_string(y) +
                                   " is unreachable from the support");
        for (std::size_t x = 0; x < sc.nx(); ++x) {
            const double q = sc.q(x, y);
            if (q == 0.0 && s > 0.0) continue;  // i stays -inf, v stays 0
            const double log_qs = (s == 0.0 ? 0.0 : s * std::log(q));
            t.i[x][y] = log_qs - log_denom;
            t.v[x][y] = sc.qx(x) > 0.0 ? std::exp(std::log(sc.qx(x)) + log_qs - log_denom) : 0.0;
        }
    }
    return t;
}

double multiletter_density(const DensityTable& table, std::span<const int> x_seq,
                           std::span<const int> y_seq) {
    if (x_seq.size() != y_seq.size())
        throw LengthMismatch("x and y sequences must have equal length");
    const std::size_t nx = table.i.size();
    const std::size_t ny = nx ? table.i.front().size() : 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < x_seq.size(); ++k) {
        const int x = x_seq[k], y = y_seq[k];
        if (x < 0 || static_cast<std::size_t>(x) >= nx || y < 0 ||
            static_cast<std::size_t>(y) >= ny)
            throw SymbolOutOfRange("sequence symbol outside alphabet");
        const double v = table.i[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        if (v == -kInf) return -kInf;
        sum += v;
    }
    return sum;
}

DiscreteRealLaw forward_spectrum(const DensityTable& table, const Scenario& sc) {
    std::vector<Atom> atoms;
    for (std::size_t x = 0; x < sc.nx(); ++x)
        for (std::size_t y = 0; y < sc.ny(); ++y) {
            const double p = sc.qx(x) * sc.w(x, y);
            if (p > 0.0) atoms.push_back({table.i[x][y], p});
        }
    return DiscreteRealLaw::from_atoms(std::move(atoms));
}

DiscreteRealLaw competitor_spectrum(const DensityTable& table, const Scenario& sc, int y) {
    if (y < 0 || static_cast<std::size_t>(y) >= sc.ny())
        throw SymbolOutOfRange("output symbol outside alphabet");
    std::vector<Atom> atoms;
    double inf_mass = 0.0;
    for (std::size_t x = 0; x < sc.nx(); ++x) {
        const double p = sc.qx(x);
        if (p <= 0.0) continue;
        const double v = table.i[x][static_cast<std::size_t>(y)];
        if (v == -kInf)
            inf_mass += p;
        else
            atoms.push_back({v, p});
    }
    return DiscreteRealLaw::from_atoms(std::move(atoms), inf_mass);
}

DiscreteRealLaw reverse_spectrum(const DensityTable& table, int y) {
    const std::size_t nx = table.v.size();
    const std::size_t ny = nx ? table.v.front().size() : 0;
    if (y < 0 || static_cast<std::size_t>(y) >= ny)
        throw SymbolOutOfRange("output symbol outside alphabet");
    std::vector<Atom> atoms;
    for (std::size_t x = 0; x < nx; ++x) {
        const double p = table.v[x][static_cast<std::size_t>(y)];
        if (p > 0.0) atoms.push_back({table.i[x][static_cast<std::size_t>(y)], p});
    }
    return DiscreteRealLaw::from_atoms(std::move(atoms));
}

}  // namespace rcbound
