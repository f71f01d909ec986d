#include "rcbound/report_io.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace rcbound {

namespace {

using nlohmann::json;

json num(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string analyze_json(const ExponentReport& rep, const RegularityReport& reg) {
    json doc;
    doc["e_r"] = num(rep.e_r);
    doc["rho_hat"] = num(rep.rho_hat);
    doc["s_star"] = num(rep.s_star);
    doc["r_cr"] = num(rep.r_cr);
    doc["i_gmi"] = num(rep.i_gmi);
    doc["regular"] = rep.regular;
    doc["regime"] = regime_name(rep.regime);
    doc["alpha_order"] = num(rep.alpha_order);
    doc["y1"] = reg.y1;
    if (reg.regular) {
        doc["v_s"] = num(reg.v_s);
        doc["delta"] = num(reg.delta);
        doc["exponent_gap"] = num(reg.exponent_gap);
        doc["y_star"] = reg.y_star;
    } else {
        doc["v_s"] = nullptr;
        doc["delta"] = nullptr;
        doc["exponent_gap"] = nullptr;
        doc["y_star"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

std::string estimate_json(const SimEstimate& est, int n, const std::string& estimator) {
    json doc;
    doc["estimator"] = estimator;
    doc["n"] = n;
    doc["p_hat"] = num(est.p_hat);
    doc["stderr"] = num(est.std_err);
    doc["trials"] = est.trials;
    doc["seed"] = est.seed;
    return doc.dump(2) + "\n";
}

std::string prefactor_json(const PrefactorFit& fit, double tol, const BoundCurve& curve) {
    json doc;
    doc["slope"] = num(fit.slope);
    doc["intercept"] = num(fit.intercept);
    doc["residual"] = num(fit.residual);
    doc["predicted_slope"] = num(fit.predicted_slope);
    doc["tol"] = tol;
    const bool pass = std::isfinite(fit.predicted_slope) &&
                      std::abs(fit.slope - fit.predicted_slope) <= tol;
    doc["pass"] = pass;
    doc["kind"] = bound_kind_name(curve.kind);
    doc["n"] = curve.n_values;
    return doc.dump(2) + "\n";
}

std::string curves_csv(std::span<const BoundCurve> curves) {
    std::ostringstream os;
    os << "n,log_bound,kind\n";
    for (const BoundCurve& c : curves)
        for (std::size_t k = 0; k < c.n_values.size(); ++k)
            os << c.n_values[k] << ',' << fmt(c.log_bound[k]) << ',' << bound_kind_name(c.kind)
               << '\n';
    return os.str();
}

std::string law_csv(const DiscreteRealLaw& law) {
    std::ostringstream os;
    os << "value,prob\n";
    if (law.neg_inf_mass() > 0.0) os << "-inf," << fmt(law.neg_inf_mass()) << '\n';
    for (const Atom& a : law.atoms()) os << fmt(a.value) << ',' << fmt(a.prob) << '\n';
    return os.str();
}

std::string estimate_csv(const SimEstimate& est, int n) {
    std::ostringstream os;
    os << "n,estimate,stderr,trials,seed\n";
    os << n << ',' << fmt(est.p_hat) << ',' << fmt(est.std_err) << ',' << est.trials << ','
       << est.seed << '\n';
    return os.str();
}

}  // namespace rcbound
