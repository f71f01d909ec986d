#ifndef RCBOUND_EXPONENTS_HPP
#define RCBOUND_EXPONENTS_HPP

#include <string>
#include <utility>

#include "rcbound/scenario.hpp"

namespace rcbound {

// Prefactor regime of the random-coding bound: the subexponential factor
// alpha(n,R) multiplying e^{-n E_r} is K*n^alpha_order (and exactly 1 for
// IRR_LOW).
enum class Regime { REG_HIGH, REG_LOW, IRR_HIGH, IRR_LOW };

std::string regime_name(Regime r);

struct ExponentReport {
    double e_r = 0.0;       // nats
    double rho_hat = 0.0;   // argmax over [0,1]
    double s_star = 0.0;    // metric tilt achieving the inner supremum
    double r_cr = 0.0;      // critical rate, nats/use
    double i_gmi = 0.0;     // generalized mutual information, nats/use
    bool regular = false;
    Regime regime = Regime::IRR_LOW;
    double alpha_order = 0.0;  // exponent of n in alpha(n,R): 0, -1/2 or -(1+rho_hat)/2
};

// E0(rho, s) = -log E[e^{-rho i_s(X,Y)}] over the finite support of Q x W.
double e0(const Scenario& sc, double rho, double s);

struct SupResult {
    double value = 0.0;
    double s_star = 0.0;
};

// sup_{s>=0} E0(rho, s). Coarse log-spaced grid plus local golden section;
// irregular scenarios short-circuit to s = 1 (all s > 0 are equivalent).
SupResult e0_sup_s(const Scenario& sc, double rho);

struct E0Derivatives {
    double d1 = 0.0;  // dE0/drho at fixed s
    double d2 = 0.0;  // d2E0/drho2, always <= 0
};

// Analytic derivatives via tilted moments of i_s(X,Y): d1 is the mean of i_s
// under the tilt proportional to Q W e^{-rho i_s}, d2 is minus its variance.
E0Derivatives e0_derivatives(const Scenario& sc, double rho, double s);

// sup_{s>=0} E[i_s(X,Y)] and its maximizer.
SupResult gmi_sup(const Scenario& sc);
double gmi(const Scenario& sc);

// Largest rate with rho_hat = 1, i.e. dE0/drho at (rho=1, s*(1)).
double critical_rate(const Scenario& sc);

// Full exponent computation at the scenario's rate. The returned triple
// (e_r, rho_hat, s_star) is self-consistent: e_r = E0(rho_hat, s_star) -
// rho_hat*R, and at interior rho_hat the stationarity R = dE0/drho holds to
// high accuracy.
ExponentReport error_exponent(const Scenario& sc);

std::pair<Regime, double> prefactor_regime(const ExponentReport& report, const Scenario& sc);

}  // namespace rcbound

#endif
