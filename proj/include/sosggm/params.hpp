#pragma once

#include <cmath>
#include <utility>

#include "sosggm/errors.hpp"

namespace sosggm {

// Model parameters for the SOS interface model on the Cayley tree of order k.
// theta in (0,1) and tau = theta + 1/theta > 2 carry the same information;
// both are stored so either form is available without re-deriving.
struct Params {
    int k = 2;
    double tau = 0.0;
    double theta = 0.0;
};

inline Params theta_from_tau(double tau, int k) {
    if (!(tau > 2.0))
        throw InvalidTemperature("tau must exceed 2 (got " + std::to_string(tau) + ")");
    if (k < 2)
        throw EmptyProblem("tree order k must be at least 2");
    // Root of theta^2 - tau*theta + 1 lying in (0,1).
    const double theta = (tau - std::sqrt(tau * tau - 4.0)) / 2.0;
    return Params{k, tau, theta};
}

// Transfer weight of a single gradient increment zeta: theta^|zeta|.
inline double q_weight(const Params& p, long long zeta) {
    return std::pow(p.theta, static_cast<double>(zeta < 0 ? -zeta : zeta));
}

// tau0 = (2k+1)/(k-1) and tau1 = 2k/(k-1), the two thresholds that organize
// the q=3 mirror and q=4 non-mirror case tables.
inline std::pair<double, double> tau_thresholds(int k) {
    const double km1 = static_cast<double>(k - 1);
    return {(2.0 * k + 1.0) / km1, 2.0 * k / km1};
}

// Bounds confining any positive orbit of the recurrence, derived from
// psi(x) = (u_{-1}+u_1-tau)x^k + tau*x: x0 is the positive zero of psi,
// x_star its argmax, and every orbit value stays below `upper`.
struct PositivityBound {
    double x0 = 0.0;
    double x_star = 0.0;
    double upper = 0.0;
};

inline PositivityBound positivity_bound(const Params& p, double u_m1, double u_1) {
    if (!(u_m1 + u_1 < p.tau))
        throw ConstraintViolation("u_{-1} + u_1 must stay below tau");
    const double ex = 1.0 / (p.k - 1.0);
    const double x0 = std::pow(p.tau / (p.tau - u_m1 - u_1), ex);
    const double x_star = x0 * std::pow(static_cast<double>(p.k), -ex);
    const double cap = (p.k - 1.0) * p.tau / std::pow(static_cast<double>(p.k), p.k * ex);
    return PositivityBound{x0, x_star, x0 * std::min(cap, 1.0)};
}

} // namespace sosggm
