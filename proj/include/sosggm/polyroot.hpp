#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "sosggm/errors.hpp"

namespace sosggm {

// Real polynomial as ascending coefficients: p(x) = c[0] + c[1] x + ...
// Dense Eigen vectors keep construction and arithmetic expression-friendly.
using Poly = Eigen::VectorXd;

inline double polyval(const Poly& p, double x) {
    double r = 0.0;
    for (Eigen::Index i = p.size() - 1; i >= 0; --i) r = r * x + p[i];
    return r;
}

Poly trim(const Poly& p);
Poly polyder(const Poly& p);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, int n);

// Long division; the remainder (if requested) has degree < degree(den).
Poly poly_div(const Poly& num, const Poly& den, Poly* rem = nullptr);

// Upper bound on the number of positive roots: coefficient sign changes.
int descartes_bound(const Poly& p);

struct Root {
    double x = 0.0;
    bool near_double = false;
    double residual = 0.0;
};

struct RootSet {
    std::vector<Root> roots; // strictly increasing in x
};

// All real roots in (lo, hi), found by a dense sign-change scan (>= 4096
// cells) refined by bisection to width `tol` and a few Newton polish steps.
// Tangential (sign-preserving) roots are recovered by probing the critical
// points of p; roots closer than 1e-6*(hi-lo) merge into one flagged entry.
RootSet isolate_positive_roots(const Poly& p, double lo, double hi, double tol = 1e-12);

// Synthetic-division quotient p / (x - r). Throws NotARoot unless p(r) is
// zero within 1e-8*(1 + max|coeff|).
Poly deflate_by_root(const Poly& p, double r);

// Bisection on an integer-valued function of tau; returns the upper end of
// the final bracket, so for a fold the returned tau sits on the side where
// the colliding pair is still (barely) present and gets flagged as a double.
double bisect_count_change(const std::function<int(double)>& count, double lo, double hi,
                           double tol = 1e-9);

// A one-parameter family of polynomials: (k, tau) -> coefficients.
using PolyFamily = std::function<Poly(int k, double tau)>;

// Locate the tau in (tau_lo, tau_hi) where the positive-root count of the
// family changes, to |dtau| < 1e-9. Throws NoTransition on equal end counts.
double find_critical_tau(const PolyFamily& family, int k, double tau_lo, double tau_hi);

} // namespace sosggm
