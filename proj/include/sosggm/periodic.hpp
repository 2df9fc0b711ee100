#pragma once

#include <Eigen/Core>
#include <vector>

#include "sosggm/params.hpp"
#include "sosggm/polyroot.hpp"

namespace sosggm {

enum class Branch { Mirror, NonMirror };

// A q-periodic positive word (u_0 = 1, u_1, ..., u_{q-1}), with
// u_{-1} = u_{q-1} by periodicity. q is always the minimal period of the
// word; solutions of a higher-period system that collapse onto a shorter
// cycle are reported with the shorter one.
struct PeriodicSolution {
    Eigen::VectorXd word;
    int q = 1;
    Branch branch = Branch::Mirror;
    double system_residual = 0.0;
    Params params;
    bool experimental = false;
};

// Max over i (mod q) of |u_i^k (u_{-1}+u_1-tau) - (u_{i-1}+u_{i+1}-tau u_i)|,
// the word form of the translation-invariant consistency equation.
double va_residual(const Eigen::VectorXd& word, const Params& p);

// Smallest divisor d of the word length such that the word is d-periodic
// (entrywise within tol).
int minimal_period(const Eigen::VectorXd& word, double tol = 1e-7);

// --- closed-form ingredients ---------------------------------------------

// Per-period polynomial families, ascending coefficients.
Poly q2_closure_poly(int k, double tau);        // (2x-tau)x^k + tau x - 2
Poly q3_mirror_poly(int k, double tau);         // 2x^{k+1} - tau x^k + (tau-1)x - 1
Poly q3_nonmirror_poly(int k, double tau);      // x^{k+1} - (tau-1)x^k + tau x - 2
Poly q4_nonmirror_ones_poly(int k, double tau); // y^k - (tau-2)(y+...+y^{k-1}) + 1
Poly q4_mirror_reduced_poly(const Params& p);   // degree k^2, see solve_q4_mirror
Poly q5_mirror_fixed_poly(const Params& p);     // phi(x) - x, degree k^2+k+1
Poly q5_nonmirror_poly_k2(double tau);          // degree 7, root x=1 included
Poly q5_zeta_poly_k2(double tau);               // the sextic left after deflating x=1

// Scalar forms used by the solvers and the figure emitters.
double q4_g(double x, const Params& p);   // (2x-tau)x^k + tau x - 1
double q4_f(double y, const Params& p);   // inverse closure; f(1) = tau(k-1)/(2k)
double q5_phi(double x, const Params& p); // (2x-tau) g(x)^k + (tau-1) g(x)
double q5_eta(double x, const Params& p); // (2-tau x)/x^k + tau - x

// k=2 closed forms for the 4-periodic mirror roots: two values for tau >= 4,
// four for tau >= 2(1+sqrt(5)); empty below 4.
std::vector<double> q4_mirror_closed_forms_k2(double tau);

// --- per-period solvers ----------------------------------------------------

std::vector<PeriodicSolution> solve_q1(const Params& p);
std::vector<PeriodicSolution> solve_q2_mirror(const Params& p);
std::vector<PeriodicSolution> solve_q3_mirror(const Params& p);
std::vector<PeriodicSolution> solve_q4_mirror(const Params& p);
std::vector<PeriodicSolution> solve_q5_mirror(const Params& p);
std::vector<PeriodicSolution> solve_q3_nonmirror(const Params& p);
std::vector<PeriodicSolution> solve_q4_nonmirror(const Params& p);
std::vector<PeriodicSolution> solve_q4_type_up(const Params& p);
std::vector<PeriodicSolution> solve_q5_nonmirror(const Params& p);

// Blind numeric search: grid-scan (u_{-1}, u_1), keep near-closing orbits,
// refine with damped Newton on the q-cycle closure. Results are flagged
// experimental; duplicates across phases of one cycle are not merged here
// (dedup handles that).
std::vector<PeriodicSolution> search_periodic_numeric(const Params& p, int q_max, int grid);

} // namespace sosggm
