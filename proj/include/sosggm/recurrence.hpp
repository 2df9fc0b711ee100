#pragma once

#include <Eigen/Core>
#include <optional>

#include "sosggm/params.hpp"

namespace sosggm {

template <typename Scalar>
Scalar int_pow(Scalar x, int n) {
    Scalar r = Scalar(1);
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// One step of the boundary-law recurrence:
//   u_{i+1} = (u_{-1} + u_1 - tau) u_i^k + tau u_i - u_{i-1}.
// Negative output is data, not an error; callers decide what to do with it.
template <typename Scalar>
Scalar step_forward(Scalar u_prev, Scalar u_cur, Scalar u_m1, Scalar u_1, const Params& p) {
    const Scalar tau = Scalar(p.tau);
    return (u_m1 + u_1 - tau) * int_pow(u_cur, p.k) + tau * u_cur - u_prev;
}

// The same relation solved for u_{i-1}; exact algebraic inverse of step_forward.
template <typename Scalar>
Scalar step_backward(Scalar u_next, Scalar u_cur, Scalar u_m1, Scalar u_1, const Params& p) {
    const Scalar tau = Scalar(p.tau);
    return (u_m1 + u_1 - tau) * int_pow(u_cur, p.k) + tau * u_cur - u_next;
}

// Orbit of the recurrence. values[0] = u_{-1}, values[1] = u_0 = 1,
// values[i] = u_{i-1}. If the orbit left the positive cone, the offending
// (non-positive) value is retained and truncated_at holds its array index.
template <typename Scalar = double>
struct Trajectory {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
    Params params;
    std::optional<Eigen::Index> truncated_at;
};

// Iterate forward until u_n (n+2 values including u_{-1} and u_0), stopping
// early if positivity fails.
template <typename Scalar = double>
Trajectory<Scalar> generate(Scalar u_m1, Scalar u_1, int n, const Params& p) {
    if (!(double(u_m1) + double(u_1) < p.tau))
        throw ConstraintViolation("u_{-1} + u_1 must stay below tau");
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n + 2);
    v[0] = u_m1;
    v[1] = Scalar(1);
    Trajectory<Scalar> traj;
    traj.params = p;
    Eigen::Index len = 2;
    if (n >= 1) {
        v[2] = u_1;
        len = 3;
        if (!(u_1 > Scalar(0))) {
            traj.truncated_at = 2;
            traj.values = v.head(len);
            return traj;
        }
        for (int i = 2; i <= n; ++i) {
            const Scalar next = step_forward(v[i - 1], v[i], u_m1, u_1, p);
            v[i + 1] = next;
            ++len;
            if (!(next > Scalar(0))) {
                traj.truncated_at = i + 1;
                break;
            }
        }
    }
    traj.values = v.head(len);
    return traj;
}

// Smallest q <= q_max with |u_{i+q} - u_i| < tol across the whole available
// window, requiring at least three periods of data for the probed q. Purely
// diagnostic: the algebraic residuals in the periodic solvers are the
// authority, since the recurrence is unstable around non-attracting cycles.
template <typename Scalar>
std::optional<int> detect_period(const Trajectory<Scalar>& traj, double tol = 1e-8, int q_max = 12) {
    if (traj.truncated_at) return std::nullopt;
    const auto& v = traj.values;
    for (int q = 1; q <= q_max; ++q) {
        if (v.size() < 3 * q + 2) break;
        bool ok = true;
        for (Eigen::Index i = 0; i + q < v.size() && ok; ++i)
            ok = std::abs(double(v[i + q] - v[i])) < tol;
        if (ok) return q;
    }
    return std::nullopt;
}

} // namespace sosggm
