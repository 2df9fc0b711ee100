#pragma once

#include <string>
#include <vector>

#include "sosggm/boundary_law.hpp"
#include "sosggm/ggm.hpp"
#include "sosggm/symmetry.hpp"

namespace sosggm {

// %.12g, the one float rendering used by every CSV/JSON emitter.
std::string fmt_g(double v);

// Solution-family selector. TypeUp restricts to the alternating-ones
// 4-periodic family on its own, since its count transitions are studied
// separately from the rest of the nonmirror branch.
enum class BranchFilter { Mirror, NonMirror, All, TypeUp };

// A concrete family a scan row or critical search runs over (All expands
// to one Mirror and one NonMirror row).
enum class ScanFamily { Mirror, NonMirror, TypeUp };

const char* branch_name(Branch b);
const char* family_name(ScanFamily f);

// --- solution enumeration ---------------------------------------------------

struct SolutionRecord {
    PeriodicSolution sol;
    SymmetryClass sym;
    Eigen::VectorXd canonical;
    double law_residual = 0.0;  // residual of the infinite system on z = u^k
};

// Output of the direct q <= 5 solvers at fixed parameters, with exact
// duplicates removed, filtered by minimal period (q_filter = 0 keeps all)
// and branch, sorted by (q, word). Distinct cyclic phases of one class are
// all kept; dedup() collapses them when class counting is wanted.
std::vector<SolutionRecord> enumerate_solutions(const Params& p, int q_filter,
                                                BranchFilter filter);

// Same record shape from the blind numeric search, for periods the direct
// solvers do not cover (q <= 12). Words are flagged experimental.
std::vector<SolutionRecord> enumerate_solutions_numeric(const Params& p, int q,
                                                        BranchFilter filter, int grid = 600);

std::string solve_json(const Params& p, const std::vector<SolutionRecord>& recs);
std::string solve_text(const Params& p, const std::vector<SolutionRecord>& recs);

// --- tau scans ---------------------------------------------------------------

struct ScanRow {
    double tau = 0.0;
    int q = 1;
    ScanFamily family = ScanFamily::Mirror;
    int raw_count = 0;
    int dedup_count = 0;
    // Sorted distinct word entries of the class representatives; the constant
    // class contributes its 1. Empty when the row has no solutions.
    std::vector<double> roots;
    bool transition = false;
};

struct ScanRequest {
    int k = 2;
    int q = 3;
    BranchFilter branch = BranchFilter::Mirror;
    double tau_min = 3.0;
    double tau_max = 6.0;
    int steps = 300;   // number of grid intervals; steps+1 rows per branch
    int threads = 0;   // 0: decide from hardware / SOSGGM_THREADS
};

// Grid rows in tau order (per tau: mirror row, then nonmirror row when the
// filter asks for both), followed by one refined transition row for every
// grid interval on which the (raw, dedup) counts change. Grid points are
// evaluated concurrently; the row order never depends on thread timing.
std::vector<ScanRow> run_scan(const ScanRequest& req);

std::string scan_csv(const std::vector<ScanRow>& rows);

// The per-branch solver dispatch behind scans and enumeration: solutions
// with minimal period exactly q on the given branch. The q = 4 nonmirror
// branch unions the one-anchored family with the alternating-anchor family.
std::vector<PeriodicSolution> solutions_for(const Params& p, int q, Branch branch);

// --- figure data -------------------------------------------------------------

// fig1: tau,g_x1,g_x2,g_x3,g_x4 over tau in [4,10]; the closed-form branch
//       columns are empty where the branch does not exist (k = 2 only).
// fig2: x,value with value = phi(x) - x on x in [0.12, 3.87].
// fig3: x,value with value = g(x), same window.
// fig4: x,value with value = zeta(x) on the three windows
//       [0.2,0.4], [0.7,3.5], [3.5,6.8] (k = 2 only).
// steps = grid intervals per window.
std::string figure_csv(const std::string& name, const Params& p, int steps);

// --- verification report -----------------------------------------------------

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<VerifyCheck> run_verify(const Params& p);

std::string verify_text(const Params& p, const std::vector<VerifyCheck>& checks);
std::string verify_json(const Params& p, const std::vector<VerifyCheck>& checks);

// --- ggm serialization -------------------------------------------------------

std::string ggm_json(const MarginalTable& t);

// --- critical-value location -------------------------------------------------

struct CriticalResult {
    double tau = 0.0;
    int q = 0;
    ScanFamily family = ScanFamily::Mirror;
    bool exact_family = false;  // true when located on a polynomial family
};

// Locates the smallest tau in (lo, hi) where the (raw, dedup) counts of the
// (q, family) row change. The q = 3 mirror family goes through the
// polynomial count bisection; everything else through scan-row bisection.
// Throws NoTransition when the counts at lo and hi agree and no interior
// change is found on the probe grid.
CriticalResult find_critical(const Params& p, int q, ScanFamily family, double lo, double hi);

std::string critical_json(const Params& p, const CriticalResult& r);

}  // namespace sosggm
