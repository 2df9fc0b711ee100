#include "sosggm/periodic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sosggm/recurrence.hpp"

namespace sosggm {

double va_residual(const Eigen::VectorXd& word, const Params& p) {
    const Eigen::Index q = word.size();
    auto u = [&](Eigen::Index i) { return word[((i % q) + q) % q]; };
    const double D = u(-1) + u(1) - p.tau;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < q; ++i) {
        const double lhs = int_pow(u(i), p.k) * D;
        const double rhs = u(i - 1) + u(i + 1) - p.tau * u(i);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

int minimal_period(const Eigen::VectorXd& word, double tol) {
    const int q = int(word.size());
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        bool ok = true;
        for (int i = d; i < q && ok; ++i) ok = std::abs(word[i] - word[i % d]) < tol;
        if (ok) return d;
    }
    return q;
}

// --- polynomial builders ----------------------------------------------------

Poly q2_closure_poly(int k, double tau) {
    Poly c = Poly::Zero(k + 2);
    c[0] = -2.0;
    c[1] = tau;
    c[k] = -tau;
    c[k + 1] = 2.0;
    return c;
}

Poly q3_mirror_poly(int k, double tau) {
    Poly c = Poly::Zero(k + 2);
    c[0] = -1.0;
    c[1] = tau - 1.0;
    c[k] = -tau;
    c[k + 1] = 2.0;
    return c;
}

Poly q3_nonmirror_poly(int k, double tau) {
    Poly c = Poly::Zero(k + 2);
    c[0] = -2.0;
    c[1] = tau;
    c[k] = -(tau - 1.0);
    c[k + 1] = 1.0;
    return c;
}

Poly q4_nonmirror_ones_poly(int k, double tau) {
    Poly c = Poly::Zero(k + 1);
    c[0] = 1.0;
    for (int j = 1; j <= k - 1; ++j) c[j] = -(tau - 2.0);
    c[k] = 1.0;
    return c;
}

namespace {

Poly q4_g_poly(const Params& p) {
    // (2x - tau) x^k + tau x - 1
    Poly c = Poly::Zero(p.k + 2);
    c[0] = -1.0;
    c[1] = p.tau;
    c[p.k] = -p.tau;
    c[p.k + 1] = 2.0;
    return c;
}

Poly constant_poly(double v) {
    Poly c(1);
    c[0] = v;
    return c;
}

} // namespace

Poly q4_mirror_reduced_poly(const Params& p) {
    // The closure (2x-tau) y^k + tau y - 2x = 0 with y = g(x) clears to
    //   P(x) = 2x (g^k - 1) - tau (g^k - g),
    // which vanishes identically on the g(x) = 1 locus (those words are
    // 2-periodic, handled by the q=2 closure). Dividing that factor out
    // leaves the genuine degree-k^2 mirror closure.
    const Poly g = q4_g_poly(p);
    const Poly gk = poly_pow(g, p.k);
    Poly x(2);
    x[0] = 0.0;
    x[1] = 2.0;
    const Poly P = poly_sub(poly_mul(x, poly_sub(gk, constant_poly(1.0))),
                            poly_mul(constant_poly(p.tau), poly_sub(gk, g)));
    Poly rem;
    const Poly Q = poly_div(P, poly_sub(g, constant_poly(1.0)), &rem);
    const double scale = 1.0 + P.cwiseAbs().maxCoeff();
    if (rem.cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw std::logic_error("q4 mirror reduction left a nonzero remainder");
    return trim(Q);
}

Poly q5_mirror_fixed_poly(const Params& p) {
    // phi(x) - x with phi = (2x - tau) g(x)^k + (tau - 1) g(x); degree k^2+k+1.
    const Poly g = q4_g_poly(p);
    Poly lin(2);
    lin[0] = -p.tau;
    lin[1] = 2.0;
    Poly phi = poly_add(poly_mul(lin, poly_pow(g, p.k)),
                        poly_mul(constant_poly(p.tau - 1.0), g));
    Poly x(2);
    x[0] = 0.0;
    x[1] = 1.0;
    return trim(poly_sub(phi, x));
}

Poly q5_nonmirror_poly_k2(double tau) {
    // Clearing x = xi(eta(x)) for k=2 over the common denominator x^6 gives
    //   (tau x - 2) N(x)^2 - (tau - 1) x^4 N(x) + x^6,  N(x) = -x^3 + tau x^2 - tau x + 2.
    Poly N(4);
    N[0] = 2.0;
    N[1] = -tau;
    N[2] = tau;
    N[3] = -1.0;
    Poly lin(2);
    lin[0] = -2.0;
    lin[1] = tau;
    Poly x4 = Poly::Zero(5);
    x4[4] = 1.0;
    Poly x6 = Poly::Zero(7);
    x6[6] = 1.0;
    const Poly P = poly_add(poly_sub(poly_mul(lin, poly_mul(N, N)),
                                     poly_mul(constant_poly(tau - 1.0), poly_mul(x4, N))),
                            x6);
    return trim(P);
}

Poly q5_zeta_poly_k2(double tau) {
    return deflate_by_root(q5_nonmirror_poly_k2(tau), 1.0);
}

// --- scalar forms ------------------------------------------------------------

double q4_g(double x, const Params& p) {
    return (2.0 * x - p.tau) * int_pow(x, p.k) + p.tau * x - 1.0;
}

double q4_f(double y, const Params& p) {
    // tau y (1 + y + ... + y^{k-2}) / (2 (1 + y + ... + y^{k-1}))
    double num = 0.0, den = 0.0, pw = 1.0;
    for (int j = 0; j <= p.k - 1; ++j) {
        if (j <= p.k - 2) num += pw;
        den += pw;
        pw *= y;
    }
    return p.tau * y * num / (2.0 * den);
}

double q5_phi(double x, const Params& p) {
    const double g = q4_g(x, p);
    return (2.0 * x - p.tau) * int_pow(g, p.k) + (p.tau - 1.0) * g;
}

double q5_eta(double x, const Params& p) {
    return (2.0 - p.tau * x) / int_pow(x, p.k) + p.tau - x;
}

std::vector<double> q4_mirror_closed_forms_k2(double tau) {
    std::vector<double> out;
    if (tau < 4.0) return out;
    const double s = std::sqrt(tau * tau - 4.0 * tau);
    const double r1 = tau * tau - 4.0 * tau + 4.0 * s;
    out.push_back((tau + std::sqrt(r1)) / 4.0);
    out.push_back((tau - std::sqrt(r1)) / 4.0);
    const double r2 = tau * tau - 4.0 * tau - 4.0 * s;
    if (r2 >= 0.0) {
        out.push_back((tau + std::sqrt(r2)) / 4.0);
        out.push_back((tau - std::sqrt(r2)) / 4.0);
    }
    return out;
}

// --- solver plumbing ---------------------------------------------------------

namespace {

// Closure system of a q-cycle in the unknowns w = (u_1, ..., u_{q-1}), with
// u_0 = u_q = 1 and u_{-1} = u_{q-1} by periodicity.
void cycle_residual(const Eigen::Ref<const Eigen::VectorXd>& w, const Params& p,
                    Eigen::Ref<Eigen::VectorXd> R) {
    const int n = int(w.size());
    const double D = w[n - 1] + w[0] - p.tau;
    for (int i = 1; i <= n; ++i) {
        const double ui = w[i - 1];
        const double um = (i == 1) ? 1.0 : w[i - 2];
        const double up = (i == n) ? 1.0 : w[i];
        R[i - 1] = D * int_pow(ui, p.k) + p.tau * ui - um - up;
    }
}

void cycle_jacobian(const Eigen::Ref<const Eigen::VectorXd>& w, const Params& p,
                    Eigen::MatrixXd& J) {
    const int n = int(w.size());
    J.setZero(n, n);
    const double D = w[n - 1] + w[0] - p.tau;
    for (int i = 1; i <= n; ++i) {
        const double ui = w[i - 1];
        J(i - 1, i - 1) += D * p.k * int_pow(ui, p.k - 1) + p.tau;
        if (i >= 2) J(i - 1, i - 2) -= 1.0;
        if (i <= n - 1) J(i - 1, i) -= 1.0;
        const double uik = int_pow(ui, p.k);
        J(i - 1, 0) += uik;
        J(i - 1, n - 1) += uik;
    }
}

// Pull a word assembled from approximate roots onto the nearest exact cycle.
// Least-squares steps via SVD stay well-behaved where the closure Jacobian
// degenerates (folds, branches passing through the constant word), which is
// exactly where scanned roots are least accurate; a word sitting within
// noise of a shorter-period cycle lands on it, so the period reduction that
// follows sees clean entries.
void polish_cycle(Eigen::VectorXd& word, const Params& p) {
    const int q = int(word.size());
    if (q < 2) return;
    Eigen::VectorXd w = word.tail(q - 1), R(q - 1), R2(q - 1);
    const Eigen::VectorXd w0 = w;
    cycle_residual(w, p, R);
    double best = R.cwiseAbs().maxCoeff();
    Eigen::MatrixXd J(q - 1, q - 1);
    for (int it = 0; it < 30 && best > 1e-14; ++it) {
        cycle_jacobian(w, p, J);
        const Eigen::VectorXd step =
            J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(R);
        double alpha = 1.0;
        bool moved = false;
        for (int h = 0; h < 25; ++h, alpha *= 0.5) {
            Eigen::VectorXd wn = w - alpha * step;
            if ((wn.array() <= 0.0).any()) continue;
            cycle_residual(wn, p, R2);
            const double r2 = R2.cwiseAbs().maxCoeff();
            if (r2 < best) {
                w = wn;
                R = R2;
                best = r2;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if ((w - w0).cwiseAbs().maxCoeff() < 1e-2) word.tail(q - 1) = w;
}

PeriodicSolution make_solution(const Eigen::VectorXd& word, const Params& p, bool experimental) {
    const int q = int(word.size());
    int d = minimal_period(word);
    Eigen::VectorXd reduced = word.head(d);
    if (d == q && q > 1) {
        // Near a bifurcation, entries of a word that is really a shorter
        // cycle are accurate only up to the root's conditioning, so entry
        // comparison alone can miss the collapse. Accept a shorter period
        // when re-solving that period reproduces every entry and satisfies
        // the closure to full precision. The window has to cover multiple-
        // root location noise (observed up to ~2e-6 at a triple root) yet
        // stay small enough that a genuine root 1e-4 away from a shorter
        // cycle's value survives as a distinct solution.
        for (int dd = 1; dd < q; ++dd) {
            if (q % dd) continue;
            Eigen::VectorXd cand = word.head(dd);
            polish_cycle(cand, p);
            if (va_residual(cand, p) > 1e-11 * (1.0 + std::pow(p.tau, p.k))) continue;
            double diff = 0.0;
            for (int i = 0; i < q; ++i)
                diff = std::max(diff, std::abs(word[i] - cand[i % dd]));
            if (diff < 1e-5) {
                d = dd;
                reduced = cand;
                break;
            }
        }
    }
    PeriodicSolution s;
    s.word = reduced;
    s.q = d;
    s.params = p;
    s.experimental = experimental;
    s.system_residual = va_residual(s.word, p);
    const double u_m1 = s.word[d - 1];
    const double u_1 = s.word[1 % d];
    s.branch = std::abs(u_m1 - u_1) < 1e-9 ? Branch::Mirror : Branch::NonMirror;
    return s;
}

bool word_ok(const Eigen::VectorXd& word, const Params& p) {
    if ((word.array() <= 0.0).any()) return false;
    const Eigen::Index q = word.size();
    if (word[q - 1] + word[1 % q] >= p.tau) return false;
    return va_residual(word, p) < 1e-9 * (1.0 + std::pow(p.tau, p.k));
}

void push_word(std::vector<PeriodicSolution>& out, Eigen::VectorXd word, const Params& p,
               bool experimental = false) {
    polish_cycle(word, p);
    if (!word_ok(word, p)) return;
    PeriodicSolution s = make_solution(word, p, experimental);
    // A degenerate root cluster can resolve to the same cycle twice.
    for (const auto& prev : out)
        if (prev.q == s.q && (prev.word - s.word).cwiseAbs().maxCoeff() < 1e-9) return;
    out.push_back(std::move(s));
}

bool near_one(double x) { return std::abs(x - 1.0) <= 1e-7; }

// Roots of a continuous function on (lo, hi) by dense sign scan; dips that do
// not change sign are probed by ternary search so tangent pairs are caught.
std::vector<double> scan_fn_roots(const std::function<double(double)>& f, double lo, double hi,
                                  int cells) {
    std::vector<double> xs(cells + 1), fs(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        xs[i] = lo + (hi - lo) * i / cells;
        fs[i] = f(xs[i]);
    }
    double scale = 1.0;
    for (double v : fs) scale = std::max(scale, std::abs(v));

    auto bisect = [&](double a, double b) {
        double fa = f(a);
        for (int it = 0; it < 120 && b - a > 1e-15 * (1.0 + std::abs(b)); ++it) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if (fm == 0.0) return m;
            if ((fa < 0.0) == (fm < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    std::vector<double> roots;
    for (int i = 0; i < cells; ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(xs[i]);
        } else if (fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
            roots.push_back(bisect(xs[i], xs[i + 1]));
        }
    }
    if (fs[cells] == 0.0) roots.push_back(xs[cells]);

    // Local minima of |f| with no sign change around them.
    for (int i = 1; i < cells; ++i) {
        if (fs[i] == 0.0 || (fs[i - 1] < 0.0) != (fs[i] < 0.0) ||
            (fs[i] < 0.0) != (fs[i + 1] < 0.0))
            continue;
        if (std::abs(fs[i]) >= std::abs(fs[i - 1]) || std::abs(fs[i]) >= std::abs(fs[i + 1]))
            continue;
        double a = xs[i - 1], b = xs[i + 1];
        for (int it = 0; it < 200; ++it) {
            const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (std::abs(f(m1)) < std::abs(f(m2)))
                b = m2;
            else
                a = m1;
        }
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0.0) != (fs[i - 1] < 0.0)) {
            roots.push_back(bisect(xs[i - 1], m));
            roots.push_back(bisect(m, xs[i + 1]));
        } else if (std::abs(fm) < 1e-10 * scale) {
            roots.push_back(m);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

// --- per-period solvers -------------------------------------------------------

std::vector<PeriodicSolution> solve_q1(const Params& p) {
    std::vector<PeriodicSolution> out;
    push_word(out, Eigen::VectorXd::Ones(1), p);
    return out;
}

std::vector<PeriodicSolution> solve_q2_mirror(const Params& p) {
    std::vector<PeriodicSolution> out;
    const RootSet rs = isolate_positive_roots(q2_closure_poly(p.k, p.tau), 1e-9, p.tau / 2.0);
    for (const Root& r : rs.roots) {
        Eigen::VectorXd w(2);
        w << 1.0, r.x;
        push_word(out, w, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q3_mirror(const Params& p) {
    std::vector<PeriodicSolution> out;
    const RootSet rs = isolate_positive_roots(q3_mirror_poly(p.k, p.tau), 1e-9, p.tau / 2.0);
    for (const Root& r : rs.roots) {
        Eigen::VectorXd w(3);
        w << 1.0, r.x, r.x;
        push_word(out, w, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q4_mirror(const Params& p) {
    std::vector<PeriodicSolution> out;
    const RootSet rs = isolate_positive_roots(q4_mirror_reduced_poly(p), 1e-9, p.tau / 2.0);
    for (const Root& r : rs.roots) {
        const double y = q4_g(r.x, p);
        if (y <= 0.0) continue;
        Eigen::VectorXd w(4);
        w << 1.0, r.x, y, r.x;
        push_word(out, w, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q5_mirror(const Params& p) {
    std::vector<PeriodicSolution> out;
    const RootSet rs = isolate_positive_roots(q5_mirror_fixed_poly(p), 1e-9, p.tau / 2.0);
    for (const Root& r : rs.roots) {
        const double y = q4_g(r.x, p);
        if (y <= 0.0) continue;
        Eigen::VectorXd w(5);
        w << 1.0, r.x, y, y, r.x;
        push_word(out, w, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q3_nonmirror(const Params& p) {
    std::vector<PeriodicSolution> out;
    const RootSet rs =
        isolate_positive_roots(q3_nonmirror_poly(p.k, p.tau), 1e-9, p.tau - 1.0);
    for (const Root& r : rs.roots) {
        if (near_one(r.x)) {
            push_word(out, Eigen::VectorXd::Ones(3), p);
            continue;
        }
        Eigen::VectorXd a(3), b(3);
        a << 1.0, 1.0, r.x; // (u_{-1}, u_1) = (x, 1)
        b << 1.0, r.x, 1.0; // (u_{-1}, u_1) = (1, x)
        push_word(out, a, p);
        push_word(out, b, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q4_nonmirror(const Params& p) {
    std::vector<PeriodicSolution> out;
    const RootSet rs =
        isolate_positive_roots(q4_nonmirror_ones_poly(p.k, p.tau), 1e-9, p.tau - 1.0);
    for (const Root& r : rs.roots) {
        if (near_one(r.x)) {
            push_word(out, Eigen::VectorXd::Ones(4), p);
            continue;
        }
        Eigen::VectorXd a(4), b(4);
        a << 1.0, r.x, r.x, 1.0; // x = 1 branch of the three-equation system
        b << 1.0, 1.0, r.x, r.x; // y = 1 branch
        push_word(out, a, p);
        push_word(out, b, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q4_type_up(const Params& p) {
    // Word (1, u_1, 1, u_{-1}). Both closure equations share
    // D = u_{-1} + u_1 - tau; eliminating via D = (2 - tau x)/x^k reduces the
    // system to a one-variable root scan over the admissible range D < 0.
    std::vector<PeriodicSolution> out;
    const double lo = (2.0 / p.tau) * (1.0 + 1e-9);
    auto f = [&](double x) {
        const double y = q5_eta(x, p);
        return (x + y - p.tau) * int_pow(y, p.k) + p.tau * y - 2.0;
    };
    for (double x : scan_fn_roots(f, lo, p.tau - 1e-9, 20000)) {
        const double y = q5_eta(x, p);
        if (y <= 0.0) continue;
        Eigen::VectorXd w(4);
        w << 1.0, y, 1.0, x;
        push_word(out, w, p);
    }
    return out;
}

std::vector<PeriodicSolution> solve_q5_nonmirror(const Params& p) {
    // Word (1, y, y, 1, x), y = eta(x). For k = 2 the closure clears to a
    // degree-7 polynomial whose x = 1 root deflates away; other k go through
    // the same one-variable scan as the alternating-ones family.
    std::vector<PeriodicSolution> out;
    std::vector<double> roots;
    if (p.k == 2) {
        const RootSet rs =
            isolate_positive_roots(q5_zeta_poly_k2(p.tau), 1e-9, p.tau - 1e-9);
        for (const Root& r : rs.roots) roots.push_back(r.x);
        roots.push_back(1.0);
    } else {
        const double lo = (2.0 / p.tau) * (1.0 + 1e-9);
        auto f = [&](double x) {
            const double y = q5_eta(x, p);
            return (x + y - p.tau) * int_pow(y, p.k) + (p.tau - 1.0) * y - 1.0;
        };
        roots = scan_fn_roots(f, lo, p.tau - 1e-9, 20000);
    }
    for (double x : roots) {
        const double y = q5_eta(x, p);
        if (y <= 0.0) continue;
        Eigen::VectorXd w(5);
        w << 1.0, y, y, 1.0, x;
        push_word(out, w, p);
    }
    return out;
}

std::vector<PeriodicSolution> search_periodic_numeric(const Params& p, int q_max, int grid) {
    if (q_max > 12) throw std::invalid_argument("numeric search supports q_max <= 12");
    std::vector<PeriodicSolution> out;
    std::vector<Eigen::VectorXd> accepted;

    auto try_cycle = [&](Eigen::VectorXd w, int q) {
        const int n = q - 1;
        Eigen::VectorXd R(n), R2(n);
        Eigen::MatrixXd J(n, n);
        cycle_residual(w, p, R);
        for (int it = 0; it < 60 && R.cwiseAbs().maxCoeff() > 1e-12; ++it) {
            cycle_jacobian(w, p, J);
            const Eigen::VectorXd step = J.partialPivLu().solve(R);
            double alpha = 1.0;
            bool moved = false;
            for (int h = 0; h < 25; ++h, alpha *= 0.5) {
                Eigen::VectorXd wn = w - alpha * step;
                if ((wn.array() <= 0.0).any()) continue;
                cycle_residual(wn, p, R2);
                if (R2.cwiseAbs().maxCoeff() < R.cwiseAbs().maxCoeff()) {
                    w = wn;
                    R = R2;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        if (R.cwiseAbs().maxCoeff() > 1e-11) return;
        Eigen::VectorXd word(q);
        word[0] = 1.0;
        word.tail(n) = w;
        if (!word_ok(word, p)) return;
        PeriodicSolution s = make_solution(word, p, true);
        for (const auto& a : accepted)
            if (a.size() == s.word.size() && (a - s.word).cwiseAbs().maxCoeff() < 1e-7) return;
        accepted.push_back(s.word);
        out.push_back(std::move(s));
    };

    push_word(out, Eigen::VectorXd::Ones(1), p, true);
    accepted.push_back(Eigen::VectorXd::Ones(1));

    // Orbits are cheap, Newton starts are not. Seeds whose orbit survives
    // long enough are gated on how nearly the orbit closes; orbits that die
    // early (typical near words with very small entries) are completed by
    // reflecting the known head, which is exact for mirror words, and gated
    // on the closure residual of that padded guess.
    std::vector<double> orbit(q_max + 2);
    Eigen::VectorXd w(q_max - 1 > 0 ? q_max - 1 : 1), Rg(q_max - 1 > 0 ? q_max - 1 : 1);
    for (int ia = 1; ia < grid; ++ia) {
        for (int ib = 1; ib < grid; ++ib) {
            const double a = p.tau * ia / grid; // u_{-1}
            const double b = p.tau * ib / grid; // u_1
            if (a + b >= p.tau) continue;
            orbit[0] = 1.0;
            orbit[1] = b;
            int len = 2;
            for (int i = 2; i <= q_max + 1; ++i) {
                const double nx = step_forward(orbit[i - 2], orbit[i - 1], a, b, p);
                if (!(nx > 0.0)) break;
                orbit[i] = nx;
                ++len;
            }
            for (int q = 2; q <= q_max; ++q) {
                auto head = w.head(q - 1);
                if (len >= q) {
                    head = Eigen::Map<const Eigen::VectorXd>(orbit.data() + 1, q - 1);
                    double dev = std::abs(orbit[q - 1] - a);
                    if (len > q) dev += std::abs(orbit[q] - 1.0);
                    if (len > q + 1) dev += std::abs(orbit[q + 1] - b);
                    if (dev > 1.5) continue;
                } else if (2 * (len - 1) >= q - 1) {
                    for (int i = 1; i <= q - 1; ++i)
                        head[i - 1] = (i < len) ? orbit[i] : orbit[q - i];
                    auto Rh = Rg.head(q - 1);
                    cycle_residual(head, p, Rh);
                    if (Rh.cwiseAbs().maxCoeff() > 0.1 * p.tau) continue;
                } else {
                    break;
                }
                try_cycle(head, q);
            }
        }
    }
    return out;
}

} // namespace sosggm
