#ifndef RCBOUND_REPORT_IO_HPP
#define RCBOUND_REPORT_IO_HPP

#include <string>

#include "rcbound/bounds.hpp"
#include "rcbound/exponents.hpp"
#include "rcbound/law.hpp"
#include "rcbound/montecarlo.hpp"
#include "rcbound/regularity.hpp"

namespace rcbound {

// JSON documents (2-space indented). Non-finite values serialize as the
// strings "inf"/"-inf" and NaN as null, so the output stays valid JSON.
std::string analyze_json(const ExponentReport& rep, const RegularityReport& reg);
std::string estimate_json(const SimEstimate& est, int n, const std::string& estimator);
std::string prefactor_json(const PrefactorFit& fit, double tol, const BoundCurve& curve);

// CSV with header "n,log_bound,kind".
std::string curves_csv(std::span<const BoundCurve> curves);

// CSV with header "value,prob"; a -inf atom prints as "-inf".
std::string law_csv(const DiscreteRealLaw& law);

// CSV with header "n,estimate,stderr,trials,seed".
std::string estimate_csv(const SimEstimate& est, int n);

}  // namespace rcbound

#endif
