#pragma once

#include <utility>

#include <Eigen/Core>

#include "sosggm/periodic.hpp"

namespace sosggm {

// Translation-invariant q-periodic boundary law z_i = u_i^k, z_0 = 1,
// indices read mod q.
struct BoundaryLaw {
    Eigen::VectorXd z;
    int q = 1;
    Params params;
};

BoundaryLaw from_word(const PeriodicSolution& sol);

// S[r] = sum over all integers zeta with zeta == r (mod q) of theta^|zeta|.
// Closed forms: S[0] = 1 + 2 theta^q/(1-theta^q),
// S[r] = (theta^r + theta^{q-r})/(1-theta^q), and the entries add up to
// (1+theta)/(1-theta).
struct ClassSums {
    Eigen::VectorXd S;
};

ClassSums class_sums(const Params& p, int q);

// Truncated direct summation over |zeta| <= cutoff, for cross-checking the
// closed forms.
ClassSums class_sums_truncated(const Params& p, int q, int cutoff);

// N_i = sum_{j in Z} theta^{|i-j|} z_{j mod q} for i = 0..q-1, as a vector.
Eigen::VectorXd law_numerators(const BoundaryLaw& law);

// Max over i of |z_i - (N_i/N_0)^k|, the residual of the infinite
// translation-invariant consistency system evaluated through the class sums.
double residual_di1(const BoundaryLaw& law);

// One-sided tail sums l_i = sum_{j <= -1} theta^{|i-j|} z_j and
// r_i = sum_{j >= 1} theta^{|i-j|} z_j, both finite for theta < 1.
std::pair<double, double> lr_sums(const BoundaryLaw& law, int i);

// Every positive q-periodic law fails normalisability: the per-site summand
// of the normalisation series is periodic in the site class and bounded
// below by min_i N_i^{k+1} > 0, so the sum over the infinite index set
// diverges. The bound is reported as the witness.
enum class Normalisability { Normalisable, Divergent };

struct NormalisabilityReport {
    Normalisability verdict = Normalisability::Divergent;
    double witness = 0.0;
};

NormalisabilityReport normalisability_verdict(const BoundaryLaw& law);

}  // namespace sosggm
