#include "sosggm/boundary_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sosggm/recurrence.hpp"

namespace sosggm {

BoundaryLaw from_word(const PeriodicSolution& sol) {
    BoundaryLaw law;
    law.q = sol.q;
    law.params = sol.params;
    law.z.resize(sol.word.size());
    for (Eigen::Index i = 0; i < sol.word.size(); ++i)
        law.z[i] = int_pow(sol.word[i], sol.params.k);
    return law;
}

ClassSums class_sums(const Params& p, int q) {
    const double th = p.theta;
    const double thq = std::pow(th, q);
    ClassSums cs;
    cs.S.resize(q);
    cs.S[0] = 1.0 + 2.0 * thq / (1.0 - thq);
    for (int r = 1; r < q; ++r)
        cs.S[r] = (std::pow(th, r) + std::pow(th, q - r)) / (1.0 - thq);
    return cs;
}

ClassSums class_sums_truncated(const Params& p, int q, int cutoff) {
    ClassSums cs;
    cs.S = Eigen::VectorXd::Zero(q);
    for (int zeta = -cutoff; zeta <= cutoff; ++zeta)
        cs.S[((zeta % q) + q) % q] += std::pow(p.theta, std::abs(zeta));
    return cs;
}

Eigen::VectorXd law_numerators(const BoundaryLaw& law) {
    const int q = law.q;
    const ClassSums cs = class_sums(law.params, q);
    // Accumulate in class-sum order (s = (r - i) mod q) so laws with equal
    // entries produce bitwise-equal numerators for every i.
    Eigen::VectorXd N(q);
    for (int i = 0; i < q; ++i) {
        double acc = 0.0;
        for (int s = 0; s < q; ++s) acc += cs.S[s] * law.z[(i + s) % q];
        N[i] = acc;
    }
    if (!N.allFinite())
        throw std::logic_error("law_numerators: nonfinite sum for theta < 1");
    return N;
}

double residual_di1(const BoundaryLaw& law) {
    const Eigen::VectorXd N = law_numerators(law);
    double worst = 0.0;
    for (int i = 0; i < law.q; ++i) {
        const double lhs = law.z[i];
        const double rhs = int_pow(N[i] / N[0], law.params.k);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

std::pair<double, double> lr_sums(const BoundaryLaw& law, int i) {
    const int q = law.q;
    const double th = law.params.theta;
    const double thq = std::pow(th, q);

    // A[r] = sum over m >= 1, m == r (mod q) of theta^m.
    Eigen::VectorXd A(q);
    A[0] = thq / (1.0 - thq);
    for (int r = 1; r < q; ++r) A[r] = std::pow(th, r) / (1.0 - thq);

    auto zat = [&](long long j) { return law.z[static_cast<Eigen::Index>(((j % q) + q) % q)]; };

    // l_i sums j <= -1. For i >= 0 every term has |i-j| = i + |j|; for i < 0
    // the near part j in i..-1 is a finite sum and the far tail j <= i-1 is
    // geometric again.
    double l = 0.0;
    if (i >= 0) {
        double base = 0.0;
        for (int r = 0; r < q; ++r) base += A[r] * zat(-r);
        l = std::pow(th, i) * base;
    } else {
        for (long long j = i; j <= -1; ++j)
            l += std::pow(th, static_cast<double>(j - i)) * zat(j);
        double tail = 0.0;
        for (int r = 0; r < q; ++r) tail += A[r] * zat(i - r);
        l += tail;
    }

    // r_i sums j >= 1.
    double r_sum = 0.0;
    if (i <= 0) {
        double base = 0.0;
        for (int r = 0; r < q; ++r) base += A[r] * zat(r);
        r_sum = std::pow(th, -i) * base;
    } else {
        for (long long j = 1; j <= i; ++j) r_sum += std::pow(th, i - j) * zat(j);
        double tail = 0.0;
        for (int r = 0; r < q; ++r) tail += A[r] * zat(i + r);
        r_sum += tail;
    }

    return {l, r_sum};
}

NormalisabilityReport normalisability_verdict(const BoundaryLaw& law) {
    const Eigen::VectorXd N = law_numerators(law);
    NormalisabilityReport rep;
    rep.verdict = Normalisability::Divergent;
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < law.q; ++i)
        lo = std::min(lo, int_pow(N[i], law.params.k + 1));
    rep.witness = lo;
    return rep;
}

}  // namespace sosggm
