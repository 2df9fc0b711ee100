#include "sosggm/polyroot.hpp"

#include <algorithm>
#include <cmath>

namespace sosggm {

Poly trim(const Poly& p) {
    Eigen::Index n = p.size();
    while (n > 1 && p[n - 1] == 0.0) --n;
    return p.head(n);
}

Poly polyder(const Poly& p) {
    if (p.size() <= 1) return Poly::Zero(1);
    Poly d(p.size() - 1);
    for (Eigen::Index i = 1; i < p.size(); ++i) d[i - 1] = double(i) * p[i];
    return d;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = Poly::Zero(std::max(a.size(), b.size()));
    r.head(a.size()) += a;
    r.head(b.size()) += b;
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = Poly::Zero(std::max(a.size(), b.size()));
    r.head(a.size()) += a;
    r.head(b.size()) -= b;
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r = Poly::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_pow(const Poly& a, int n) {
    Poly r = Poly::Ones(1);
    for (int i = 0; i < n; ++i) r = poly_mul(r, a);
    return r;
}

Poly poly_div(const Poly& num, const Poly& den_in, Poly* rem) {
    const Poly den = trim(den_in);
    if (den.size() <= 0 || (den.size() == 1 && den[0] == 0.0))
        throw EmptyProblem("division by the zero polynomial");
    Poly r = num;
    const Eigen::Index dn = den.size() - 1;
    if (num.size() - 1 < dn) {
        if (rem) *rem = num;
        return Poly::Zero(1);
    }
    Poly q = Poly::Zero(num.size() - dn);
    for (Eigen::Index i = r.size() - 1; i >= dn; --i) {
        const double c = r[i] / den[dn];
        q[i - dn] = c;
        for (Eigen::Index j = 0; j <= dn; ++j) r[i - dn + j] -= c * den[j];
    }
    if (rem) *rem = trim(r.head(dn > 0 ? dn : 1).eval());
    return q;
}

int descartes_bound(const Poly& p) {
    int changes = 0;
    int prev = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        const int s = p[i] > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

namespace {

double coeff_scale(const Poly& p) {
    return 1.0 + p.cwiseAbs().maxCoeff();
}

// Bisect a bracketing interval down to `tol`, then polish with Newton while
// the iterate stays inside the bracket.
double refine_root(const Poly& p, const Poly& dp, double lo, double hi, double tol) {
    double flo = polyval(p, lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = polyval(p, mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double d = polyval(dp, x);
        if (d == 0.0) break;
        const double step = polyval(p, x) / d;
        const double nx = x - step;
        if (!(nx > lo && nx < hi)) break;
        x = nx;
    }
    return x;
}

} // namespace

RootSet isolate_positive_roots(const Poly& poly, double lo, double hi, double tol) {
    const Poly p = trim(poly);
    if (p.size() <= 1) throw EmptyProblem("root isolation needs degree >= 1");
    if (!(hi > lo)) throw EmptyProblem("root isolation needs a nonempty interval");

    const Poly dp = polyder(p);
    const double scale = coeff_scale(p);
    const int cells = std::max<int>(4096, 512 * int(p.size()));
    const double h = (hi - lo) / cells;

    struct Cand {
        double x;
        bool tangent;
    };
    std::vector<Cand> cands;

    double x_prev = lo;
    double f_prev = polyval(p, x_prev);
    for (int i = 1; i <= cells; ++i) {
        const double x = (i == cells) ? hi : lo + h * i;
        const double f = polyval(p, x);
        if (f_prev == 0.0) {
            cands.push_back({x_prev, false});
        } else if (f != 0.0 && (f_prev < 0.0) != (f < 0.0)) {
            cands.push_back({refine_root(p, dp, x_prev, x, tol), false});
        }
        x_prev = x;
        f_prev = f;
    }
    if (f_prev == 0.0) cands.push_back({hi, false});

    // Sign-preserving (tangential) roots hide at critical points of p. A
    // critical point c is a root when the extremal value touches or crosses
    // zero relative to the sign on both sides; the magnitude fallback only
    // absorbs machine-level noise at an exact double root, so the
    // accept/reject boundary tracks the true tangency closely enough for
    // count-based bisection in an outer parameter to stay sharp.
    if (dp.size() > 1) {
        double cx_prev = lo, g_prev = polyval(dp, lo);
        const Poly ddp = polyder(dp);
        for (int i = 1; i <= cells; ++i) {
            const double x = (i == cells) ? hi : lo + h * i;
            const double g = polyval(dp, x);
            const bool hit_prev = (g_prev == 0.0);
            if (hit_prev || (g != 0.0 && (g_prev < 0.0) != (g < 0.0))) {
                const double c = hit_prev ? cx_prev : refine_root(dp, ddp, cx_prev, x, tol);
                const double pc = polyval(p, c);
                const double left = polyval(p, std::max(lo, c - h));
                const double right = polyval(p, std::min(hi, c + h));
                const bool touches = pc * left <= 0.0 && pc * right <= 0.0;
                if (touches || std::abs(pc) <= 1e-12 * scale) cands.push_back({c, true});
            }
            cx_prev = x;
            g_prev = g;
        }
    }

    // A sign change close to a critical point means the candidate pair is
    // already resolved; keep only the crossings there.
    std::erase_if(cands, [&](const Cand& t) {
        if (!t.tangent) return false;
        for (const Cand& c : cands)
            if (!c.tangent && std::abs(c.x - t.x) <= h) return true;
        return false;
    });

    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.x < b.x; });

    RootSet out;
    const double merge_w = 1e-6 * (hi - lo);
    for (const Cand& c : cands) {
        if (!out.roots.empty() && c.x - out.roots.back().x < merge_w) {
            Root& r = out.roots.back();
            r.near_double = true;
            if (std::abs(polyval(p, c.x)) < r.residual) {
                r.x = c.x;
                r.residual = std::abs(polyval(p, c.x));
            }
        } else {
            out.roots.push_back({c.x, c.tangent, std::abs(polyval(p, c.x))});
        }
    }
    return out;
}

Poly deflate_by_root(const Poly& poly, double r) {
    const Poly p = trim(poly);
    if (p.size() <= 1) throw EmptyProblem("cannot deflate a constant");
    if (std::abs(polyval(p, r)) >= 1e-8 * coeff_scale(p))
        throw NotARoot("requested deflation point is not a root");
    const Eigen::Index n = p.size() - 1; // degree
    Poly q(n);
    q[n - 1] = p[n];
    for (Eigen::Index j = n - 1; j >= 1; --j) q[j - 1] = p[j] + r * q[j];
    return q;
}

double bisect_count_change(const std::function<int(double)>& count, double lo, double hi,
                           double tol) {
    const int c_lo = count(lo);
    if (count(hi) == c_lo) throw NoTransition("equal counts at both interval ends");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (count(mid) == c_lo)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double find_critical_tau(const PolyFamily& family, int k, double tau_lo, double tau_hi) {
    auto count = [&](double tau) {
        const Poly p = family(k, tau);
        return int(isolate_positive_roots(p, 1e-9, std::max(4.0, tau * tau)).roots.size());
    };
    return bisect_count_change(count, tau_lo, tau_hi, 1e-9);
}

} // namespace sosggm
