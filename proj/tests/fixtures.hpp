#ifndef RCBOUND_TESTS_FIXTURES_HPP
#define RCBOUND_TESTS_FIXTURES_HPP

#include <cmath>
#include <vector>

#include "rcbound/scenario.hpp"

namespace fixtures {

// BSC with crossover 0.11, ML metric, uniform input.
inline rcbound::Scenario bsc(double rate = 0.30, double p = 0.11) {
    rcbound::Matrix w = {{1.0 - p, p}, {p, 1.0 - p}};
    return rcbound::validate_scenario(w, w, {0.5, 0.5}, rate);
}

// BEC with erasure probability 0.5 (outputs 0, e, 1), ML metric, uniform input.
inline rcbound::Scenario bec(double rate = 0.15, double eps = 0.5) {
    rcbound::Matrix w = {{1.0 - eps, eps, 0.0}, {0.0, eps, 1.0 - eps}};
    return rcbound::validate_scenario(w, w, {0.5, 0.5}, rate);
}

// 2x3 channel with a mismatched decoding metric; regular, Y1 = {0, 2}.
inline rcbound::Scenario mismatched23(double rate = 0.10) {
    rcbound::Matrix w = {{0.7, 0.2, 0.1}, {0.1, 0.2, 0.7}};
    rcbound::Matrix q = {{1.0, 0.5, 0.1}, {0.1, 0.5, 1.0}};
    return rcbound::validate_scenario(w, q, {0.5, 0.5}, rate);
}

// Same channel under ML decoding.
inline rcbound::Scenario ml23(double rate = 0.10) {
    rcbound::Matrix w = {{0.7, 0.2, 0.1}, {0.1, 0.2, 0.7}};
    return rcbound::validate_scenario(w, w, {0.5, 0.5}, rate);
}

// Noiseless binary channel, ML metric. rate defaults so that M = 2 at n = 1.
inline rcbound::Scenario noiseless(double rate = 0.6) {
    rcbound::Matrix w = {{1.0, 0.0}, {0.0, 1.0}};
    return rcbound::validate_scenario(w, w, {0.5, 0.5}, rate);
}

// Rate such that ceil(e^{nR}) lands exactly on m (mid-interval, fp safe).
inline double rate_for_m(int n, int m) {
    return std::log(static_cast<double>(m) - 0.2) / static_cast<double>(n);
}

}  // namespace fixtures

#endif
