#include "sosggm/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

#include "sosggm/periodic.hpp"

namespace sosggm {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* branch_name(Branch b) {
    return b == Branch::Mirror ? "mirror" : "nonmirror";
}

const char* family_name(ScanFamily f) {
    switch (f) {
        case ScanFamily::Mirror: return "mirror";
        case ScanFamily::NonMirror: return "nonmirror";
        default: return "type-up";
    }
}

namespace {

bool same_word(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() < 1e-9;
}

std::string sym_name(const SymmetryClass& s) {
    switch (s.kind) {
        case SymmetryClass::Kind::Mirror: return "mirror";
        case SymmetryClass::Kind::TwoMirror: return "two-mirror:" + std::to_string(s.p);
        default: return "none";
    }
}

std::string json_vec(const Eigen::VectorXd& w) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += fmt_g(w[i]);
    }
    return out + "]";
}

std::string text_vec(const Eigen::VectorXd& w) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (i) out += ", ";
        out += fmt_g(w[i]);
    }
    return out + ")";
}

std::vector<ScanFamily> families_of(BranchFilter f) {
    switch (f) {
        case BranchFilter::Mirror: return {ScanFamily::Mirror};
        case BranchFilter::NonMirror: return {ScanFamily::NonMirror};
        case BranchFilter::TypeUp: return {ScanFamily::TypeUp};
        default: return {ScanFamily::Mirror, ScanFamily::NonMirror};
    }
}

std::vector<PeriodicSolution> family_solutions(const Params& p, int q, ScanFamily f) {
    if (f == ScanFamily::Mirror) return solutions_for(p, q, Branch::Mirror);
    if (f == ScanFamily::NonMirror) return solutions_for(p, q, Branch::NonMirror);
    std::vector<PeriodicSolution> out;
    for (PeriodicSolution& s : solve_q4_type_up(p)) {
        if (s.q != q) continue;
        bool dup = false;
        for (const PeriodicSolution& e : out)
            if (same_word(e.word, s.word)) { dup = true; break; }
        if (!dup) out.push_back(std::move(s));
    }
    return out;
}

ScanRow make_row(const Params& p, int q, ScanFamily f) {
    ScanRow row;
    row.tau = p.tau;
    row.q = q;
    row.family = f;
    std::vector<PeriodicSolution> sols = family_solutions(p, q, f);
    row.raw_count = static_cast<int>(sols.size());
    const std::vector<PeriodicSolution> classes = dedup(std::move(sols));
    row.dedup_count = static_cast<int>(classes.size());
    std::vector<double> vals;
    for (const PeriodicSolution& c : classes)
        for (Eigen::Index i = 0; i < c.word.size(); ++i)
            if (std::abs(c.word[i] - 1.0) > 1e-9) vals.push_back(c.word[i]);
    std::sort(vals.begin(), vals.end());
    std::vector<double> uniq;
    for (double v : vals)
        if (uniq.empty() || v - uniq.back() > 1e-9) uniq.push_back(v);
    if (uniq.empty() && row.dedup_count > 0) uniq.push_back(1.0);
    row.roots = std::move(uniq);
    return row;
}

std::pair<int, int> row_counts(const ScanRow& r) {
    return {r.raw_count, r.dedup_count};
}

// Upper end of the bracket where the (raw, dedup) counts of the (q, family)
// row change, refined to 1e-9 relative width. Both input rows must already
// disagree in counts.
ScanRow bisect_row_change(int k, int q, ScanFamily f, ScanRow lo_row, ScanRow hi_row) {
    const std::pair<int, int> base = row_counts(lo_row);
    while (hi_row.tau - lo_row.tau > 1e-9 * std::max(1.0, std::abs(hi_row.tau))) {
        const double mid = 0.5 * (lo_row.tau + hi_row.tau);
        ScanRow m = make_row(theta_from_tau(mid, k), q, f);
        if (row_counts(m) == base)
            lo_row = std::move(m);
        else
            hi_row = std::move(m);
    }
    hi_row.transition = true;
    return hi_row;
}

}  // namespace

std::vector<PeriodicSolution> solutions_for(const Params& p, int q, Branch branch) {
    std::vector<std::vector<PeriodicSolution> (*)(const Params&)> solvers;
    if (branch == Branch::Mirror) {
        switch (q) {
            case 1: solvers = {solve_q1}; break;
            case 2: solvers = {solve_q2_mirror}; break;
            case 3: solvers = {solve_q3_mirror}; break;
            case 4: solvers = {solve_q4_mirror}; break;
            case 5: solvers = {solve_q5_mirror}; break;
            default: return {};
        }
    } else {
        switch (q) {
            case 3: solvers = {solve_q3_nonmirror}; break;
            case 4: solvers = {solve_q4_nonmirror, solve_q4_type_up}; break;
            case 5: solvers = {solve_q5_nonmirror}; break;
            default: return {};
        }
    }
    std::vector<PeriodicSolution> out;
    for (auto* solver : solvers) {
        for (PeriodicSolution& s : solver(p)) {
            if (s.q != q || s.branch != branch) continue;
            bool dup = false;
            for (const PeriodicSolution& e : out)
                if (same_word(e.word, s.word)) { dup = true; break; }
            if (!dup) out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

void sort_records(std::vector<SolutionRecord>& out) {
    std::sort(out.begin(), out.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
        if (a.sol.q != b.sol.q) return a.sol.q < b.sol.q;
        const int c = lex_compare(a.canonical, b.canonical);
        if (c != 0) return c < 0;
        return lex_compare(a.sol.word, b.sol.word) < 0;
    });
}

SolutionRecord make_record(PeriodicSolution s) {
    SolutionRecord rec;
    rec.sym = classify(s.word);
    rec.canonical = canonical_form(s.word).word;
    rec.law_residual = residual_di1(from_word(s));
    rec.sol = std::move(s);
    return rec;
}

}  // namespace

std::vector<SolutionRecord> enumerate_solutions(const Params& p, int q_filter,
                                                BranchFilter filter) {
    std::vector<SolutionRecord> out;
    for (int q = 1; q <= 5; ++q) {
        if (q_filter != 0 && q != q_filter) continue;
        for (ScanFamily f : families_of(filter))
            for (PeriodicSolution& s : family_solutions(p, q, f))
                out.push_back(make_record(std::move(s)));
    }
    sort_records(out);
    return out;
}

std::vector<SolutionRecord> enumerate_solutions_numeric(const Params& p, int q,
                                                        BranchFilter filter, int grid) {
    std::vector<SolutionRecord> out;
    for (PeriodicSolution& s : search_periodic_numeric(p, q, grid)) {
        if (s.q != q) continue;
        if (filter == BranchFilter::Mirror && s.branch != Branch::Mirror) continue;
        if (filter == BranchFilter::NonMirror && s.branch != Branch::NonMirror) continue;
        if (filter == BranchFilter::TypeUp) {
            // the alternating-ones shape, read at either one-anchor
            if (q != 4 || s.branch != Branch::NonMirror) continue;
            if (std::abs(s.word[2] - 1.0) > 1e-9) continue;
        }
        out.push_back(make_record(std::move(s)));
    }
    sort_records(out);
    return out;
}

std::string solve_json(const Params& p, const std::vector<SolutionRecord>& recs) {
    std::string out = "{\"schema\":1,\"k\":" + std::to_string(p.k) +
                      ",\"tau\":" + fmt_g(p.tau) + ",\"solutions\":[";
    for (size_t i = 0; i < recs.size(); ++i) {
        const SolutionRecord& r = recs[i];
        if (i) out += ",";
        out += "{\"k\":" + std::to_string(p.k);
        out += ",\"tau\":" + fmt_g(p.tau);
        out += ",\"q\":" + std::to_string(r.sol.q);
        out += ",\"word\":" + json_vec(r.sol.word);
        out += ",\"symmetry\":\"" + sym_name(r.sym) + "\"";
        out += ",\"canonical\":" + json_vec(r.canonical);
        out += ",\"residual_system\":" + fmt_g(r.sol.system_residual);
        out += ",\"residual_di1\":" + fmt_g(r.law_residual);
        out += std::string(",\"branch\":\"") + branch_name(r.sol.branch) + "\"}";
    }
    return out + "]}\n";
}

std::string solve_text(const Params& p, const std::vector<SolutionRecord>& recs) {
    std::string out = "k=" + std::to_string(p.k) + " tau=" + fmt_g(p.tau) +
                      " solutions=" + std::to_string(recs.size()) + "\n";
    for (const SolutionRecord& r : recs) {
        out += "q=" + std::to_string(r.sol.q);
        out += std::string(" branch=") + branch_name(r.sol.branch);
        out += " symmetry=" + sym_name(r.sym);
        out += " word=" + text_vec(r.sol.word);
        out += " residual_system=" + fmt_g(r.sol.system_residual);
        out += " residual_di1=" + fmt_g(r.law_residual);
        out += "\n";
    }
    return out;
}

std::vector<ScanRow> run_scan(const ScanRequest& req) {
    if (req.steps < 0) throw EmptyProblem("scan needs a nonnegative step count");
    const int n_points = req.steps + 1;
    const std::vector<ScanFamily> families = families_of(req.branch);
    auto tau_at = [&](int i) {
        if (i == req.steps) return req.tau_max;
        return req.tau_min + (req.tau_max - req.tau_min) * i / req.steps;
    };

    int n_threads = req.threads;
    if (n_threads <= 0) {
        if (const char* env = std::getenv("SOSGGM_THREADS")) n_threads = std::atoi(env);
    }
    if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, n_points));

    std::vector<std::vector<ScanRow>> grid(n_points);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mx;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_points) return;
            try {
                const Params pt = theta_from_tau(tau_at(i), req.k);
                std::vector<ScanRow> rows;
                rows.reserve(families.size());
                for (ScanFamily f : families) rows.push_back(make_row(pt, req.q, f));
                grid[i] = std::move(rows);
            } catch (...) {
                std::lock_guard<std::mutex> lk(failure_mx);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<ScanRow> out;
    out.reserve(static_cast<size_t>(n_points) * families.size());
    for (int i = 0; i < n_points; ++i)
        for (const ScanRow& r : grid[i]) out.push_back(r);

    std::vector<ScanRow> transitions;
    for (size_t f = 0; f < families.size(); ++f) {
        for (int i = 0; i + 1 < n_points; ++i) {
            const ScanRow& lo = grid[i][f];
            const ScanRow& hi = grid[i + 1][f];
            if (row_counts(lo) == row_counts(hi)) continue;
            transitions.push_back(bisect_row_change(req.k, req.q, families[f], lo, hi));
        }
    }
    std::stable_sort(transitions.begin(), transitions.end(),
                     [](const ScanRow& a, const ScanRow& b) { return a.tau < b.tau; });
    for (ScanRow& t : transitions) out.push_back(std::move(t));
    return out;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "tau,q,branch,raw_count,dedup_count,roots\n";
    for (const ScanRow& r : rows) {
        out += fmt_g(r.tau);
        out += "," + std::to_string(r.q);
        out += std::string(",") + family_name(r.family);
        out += "," + std::to_string(r.raw_count);
        out += "," + std::to_string(r.dedup_count);
        out += ",";
        if (r.transition) {
            out += "transition";
        } else {
            for (size_t i = 0; i < r.roots.size(); ++i) {
                if (i) out += ";";
                out += fmt_g(r.roots[i]);
            }
        }
        out += "\n";
    }
    return out;
}

std::string figure_csv(const std::string& name, const Params& p, int steps) {
    if (steps < 1) throw EmptyProblem("figure grids need at least one step");
    auto linspace = [&](double lo, double hi, int i) {
        return i == steps ? hi : lo + (hi - lo) * i / steps;
    };
    std::string out;
    if (name == "fig1") {
        if (p.k != 2) throw EmptyProblem("the labeled branch columns use the k = 2 closed forms");
        out = "tau,g_x1,g_x2,g_x3,g_x4\n";
        for (int i = 0; i <= steps; ++i) {
            const double tau = linspace(4.0, 10.0, i);
            const Params pt = theta_from_tau(tau, 2);
            const double d = std::sqrt(tau * tau - 4.0 * tau);
            const double inner_p = tau * tau - 4.0 * tau + 4.0 * d;
            const double inner_m = tau * tau - 4.0 * tau - 4.0 * d;
            out += fmt_g(tau);
            const double sp = std::sqrt(std::max(inner_p, 0.0));
            out += "," + fmt_g(q4_g((tau + sp) / 4.0, pt));
            out += "," + fmt_g(q4_g((tau - sp) / 4.0, pt));
            if (inner_m >= 0.0) {
                const double sm = std::sqrt(inner_m);
                out += "," + fmt_g(q4_g((tau + sm) / 4.0, pt));
                out += "," + fmt_g(q4_g((tau - sm) / 4.0, pt));
            } else {
                out += ",,";
            }
            out += "\n";
        }
        return out;
    }
    if (name == "fig2" || name == "fig3") {
        out = "x,value\n";
        for (int i = 0; i <= steps; ++i) {
            const double x = linspace(0.12, 3.87, i);
            const double v = name == "fig2" ? q5_phi(x, p) - x : q4_g(x, p);
            out += fmt_g(x) + "," + fmt_g(v) + "\n";
        }
        return out;
    }
    if (name == "fig4") {
        if (p.k != 2) throw EmptyProblem("the root-window plot uses the k = 2 sextic");
        const Poly zeta = q5_zeta_poly_k2(p.tau);
        out = "x,value\n";
        const double windows[3][2] = {{0.2, 0.4}, {0.7, 3.5}, {3.5, 6.8}};
        double last_x = -1.0;
        for (const auto& w : windows) {
            for (int i = 0; i <= steps; ++i) {
                const double x = i == steps ? w[1] : w[0] + (w[1] - w[0]) * i / steps;
                if (x == last_x) continue;
                out += fmt_g(x) + "," + fmt_g(polyval(zeta, x)) + "\n";
                last_x = x;
            }
        }
        return out;
    }
    throw EmptyProblem("unknown figure '" + name + "'");
}

std::vector<VerifyCheck> run_verify(const Params& p) {
    std::vector<VerifyCheck> out;
    const std::vector<SolutionRecord> recs = enumerate_solutions(p, 0, BranchFilter::All);

    double worst_sys = 0.0, worst_law = 0.0;
    for (const SolutionRecord& r : recs) {
        worst_sys = std::max(worst_sys, r.sol.system_residual);
        worst_law = std::max(worst_law, r.law_residual);
    }
    out.push_back({"system residual",
                   worst_sys < 1e-8,
                   "max " + fmt_g(worst_sys) + " over " + std::to_string(recs.size()) + " words"});
    out.push_back({"boundary-law residual",
                   worst_law < 1e-8,
                   "max " + fmt_g(worst_law) + " over " + std::to_string(recs.size()) + " laws"});

    bool all_divergent = true;
    double min_witness = std::numeric_limits<double>::infinity();
    for (const SolutionRecord& r : recs) {
        const NormalisabilityReport n = normalisability_verdict(from_word(r.sol));
        all_divergent = all_divergent && n.verdict == Normalisability::Divergent;
        min_witness = std::min(min_witness, n.witness);
    }
    out.push_back({"normalisability",
                   all_divergent,
                   recs.empty() ? "no laws" : "all divergent, min witness " + fmt_g(min_witness)});

    int n_mirror = 0, n_two = 0, n_none = 0;
    bool branch_consistent = true;
    for (const SolutionRecord& r : recs) {
        switch (r.sym.kind) {
            case SymmetryClass::Kind::Mirror: ++n_mirror; break;
            case SymmetryClass::Kind::TwoMirror: ++n_two; break;
            default: ++n_none; break;
        }
        if (r.sol.branch == Branch::Mirror &&
            r.sym.kind != SymmetryClass::Kind::Mirror)
            branch_consistent = false;
    }
    out.push_back({"symmetry structure",
                   n_none == 0 && branch_consistent,
                   std::to_string(n_mirror) + " mirror, " + std::to_string(n_two) +
                       " two-mirror, " + std::to_string(n_none) + " unclassified"});

    bool bound_ok = true;
    for (const SolutionRecord& r : recs) {
        std::vector<double> vals(r.sol.word.data(), r.sol.word.data() + r.sol.word.size());
        std::sort(vals.begin(), vals.end());
        int distinct = 0;
        for (size_t i = 0; i < vals.size(); ++i)
            if (i == 0 || vals[i] - vals[i - 1] > 1e-9) ++distinct;
        if (distinct > r.sol.q / 2 + 1) bound_ok = false;
    }
    out.push_back({"distinct-value bound", bound_ok,
                   "every word has at most floor(q/2)+1 distinct entries"});

    const auto class_count = [&](int q, Branch b) {
        return static_cast<int>(dedup(solutions_for(p, q, b)).size());
    };
    const auto pin = [&](const char* name, int q, Branch b, int want) {
        const int got = class_count(q, b);
        out.push_back({name, got == want,
                       "classes = " + std::to_string(got) + ", reference " + std::to_string(want)});
    };
    bool pinned = false;
    if (p.k == 2 && std::abs(p.tau - 8.0) < 1e-9) {
        pinned = true;
        pin("reference count q=4 mirror", 4, Branch::Mirror, 4);
        pin("reference count q=5 mirror", 5, Branch::Mirror, 6);
        pin("reference count q=5 nonmirror", 5, Branch::NonMirror, 6);
    } else if (p.k == 2 && std::abs(p.tau - 5.0) < 1e-9) {
        pinned = true;
        pin("reference count q=4 mirror", 4, Branch::Mirror, 2);
    } else if (p.k == 2 && std::abs(p.tau - 2.1) < 1e-9) {
        pinned = true;
        int nontrivial = 0;
        for (int q = 2; q <= 5; ++q)
            for (Branch b : {Branch::Mirror, Branch::NonMirror})
                nontrivial += class_count(q, b);
        out.push_back({"reference count trivial-only", nontrivial == 0,
                       std::to_string(nontrivial) + " nontrivial classes, reference 0"});
    }
    if (!pinned)
        out.push_back({"reference counts", true, "no reference table at these parameters"});
    return out;
}

std::string verify_text(const Params& p, const std::vector<VerifyCheck>& checks) {
    std::string out = "k=" + std::to_string(p.k) + " tau=" + fmt_g(p.tau) + "\n";
    size_t passed = 0;
    for (const VerifyCheck& c : checks) {
        out += c.pass ? "[pass] " : "[FAIL] ";
        out += c.name + ": " + c.detail + "\n";
        if (c.pass) ++passed;
    }
    out += "result: ";
    out += passed == checks.size() ? "PASS" : "FAIL";
    out += " (" + std::to_string(passed) + "/" + std::to_string(checks.size()) + " checks)\n";
    return out;
}

std::string verify_json(const Params& p, const std::vector<VerifyCheck>& checks) {
    bool all = true;
    for (const VerifyCheck& c : checks) all = all && c.pass;
    std::string out = "{\"schema\":1,\"k\":" + std::to_string(p.k) +
                      ",\"tau\":" + fmt_g(p.tau) + ",\"pass\":" + (all ? "true" : "false") +
                      ",\"checks\":[";
    for (size_t i = 0; i < checks.size(); ++i) {
        if (i) out += ",";
        out += "{\"name\":\"" + checks[i].name + "\",\"pass\":";
        out += checks[i].pass ? "true" : "false";
        out += ",\"detail\":\"" + checks[i].detail + "\"}";
    }
    return out + "]}\n";
}

std::string ggm_json(const MarginalTable& t) {
    std::string out = "{\"schema\":1,\"mode\":\"";
    out += t.mode == GgmMode::ExactClass ? "exact" : "trunc";
    out += "\",\"q\":" + std::to_string(t.q);
    out += ",\"rcut\":" + std::to_string(t.rcut);
    out += ",\"edges\":" + std::to_string(t.n_edges);
    out += ",\"support\":[";
    for (Eigen::Index s = 0; s < t.size(); ++s) {
        if (s) out += ",";
        out += "[";
        for (Eigen::Index e = 0; e < t.n_edges; ++e) {
            if (e) out += ",";
            out += std::to_string(t.mode == GgmMode::ExactClass ? t.digit(s, e)
                                                                : t.symbol(s, e));
        }
        out += "]";
    }
    out += "],\"probs\":[";
    for (Eigen::Index s = 0; s < t.size(); ++s) {
        if (s) out += ",";
        out += fmt_g(t.probs[s]);
    }
    out += "],\"total\":" + fmt_g(t.probs.sum());
    out += ",\"tail_bound\":" + fmt_g(t.tail_bound);
    return out + "}\n";
}

CriticalResult find_critical(const Params& p, int q, ScanFamily family, double lo, double hi) {
    CriticalResult res;
    res.q = q;
    res.family = family;
    if (q == 3 && family == ScanFamily::Mirror) {
        res.tau = find_critical_tau(
            [](int k, double tau) { return q3_mirror_poly(k, tau); }, p.k, lo, hi);
        res.exact_family = true;
        return res;
    }
    ScanRow lo_row = make_row(theta_from_tau(lo, p.k), q, family);
    ScanRow hi_row = make_row(theta_from_tau(hi, p.k), q, family);
    if (row_counts(lo_row) == row_counts(hi_row)) {
        // Equal end counts can still hide an interior change; probe a grid.
        const int probes = 64;
        ScanRow prev = lo_row;
        bool found = false;
        for (int i = 1; i <= probes; ++i) {
            const double t = i == probes ? hi : lo + (hi - lo) * i / probes;
            ScanRow row = make_row(theta_from_tau(t, p.k), q, family);
            if (row_counts(row) != row_counts(prev)) {
                lo_row = std::move(prev);
                hi_row = std::move(row);
                found = true;
                break;
            }
            prev = std::move(row);
        }
        if (!found)
            throw NoTransition("no count change on [" + fmt_g(lo) + ", " + fmt_g(hi) + "]");
    }
    res.tau = bisect_row_change(p.k, q, family, std::move(lo_row), std::move(hi_row)).tau;
    return res;
}

std::string critical_json(const Params& p, const CriticalResult& r) {
    std::string out = "{\"schema\":1,\"k\":" + std::to_string(p.k);
    out += ",\"q\":" + std::to_string(r.q);
    out += std::string(",\"branch\":\"") + family_name(r.family) + "\"";
    out += ",\"tau_critical\":" + fmt_g(r.tau);
    out += std::string(",\"method\":\"") + (r.exact_family ? "polynomial" : "scan") + "\"";
    return out + "}\n";
}

}  // namespace sosggm
