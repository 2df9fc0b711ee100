// sosggm: boundary-law enumeration, tau scans, critical values, figure data,
// finite-ball gradient marginals, and self-verification, from one binary.
//
// Exit codes: 0 success, 1 failed verification or no transition found,
// 2 usage error, 3 unwritable output path, 4 oversized enumeration.

#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"

#include "sosggm/errors.hpp"
#include "sosggm/ggm.hpp"
#include "sosggm/report.hpp"

namespace {

using namespace sosggm;

// Writes to the path when given, stdout otherwise. Returns 0 or 3.
int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return 0;
    }
    std::ofstream ofs(out_path, std::ios::binary);
    if (ofs) ofs << text;
    if (!ofs || !ofs.flush()) {
        std::fprintf(stderr, "sosggm: cannot write '%s'\n", out_path.c_str());
        return 3;
    }
    return 0;
}

BranchFilter filter_of(const std::string& s) {
    if (s == "mirror") return BranchFilter::Mirror;
    if (s == "nonmirror") return BranchFilter::NonMirror;
    if (s == "type-up") return BranchFilter::TypeUp;
    return BranchFilter::All;
}

ScanFamily family_of(const std::string& s) {
    if (s == "nonmirror") return ScanFamily::NonMirror;
    if (s == "type-up") return ScanFamily::TypeUp;
    return ScanFamily::Mirror;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"height-periodic boundary laws of the SOS model on Cayley trees"};
    app.name("sosggm");
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    int rc = 0;

    // solve: enumerate the boundary-law words at fixed (k, tau, q).
    auto* solve = app.add_subcommand("solve", "enumerate q-periodic boundary laws");
    struct {
        int k = 2;
        double tau = 0.0;
        int q = 0;
        std::string symmetry = "all";
        bool experimental = false;
        std::string format = "json";
        std::string out;
    } so;
    solve->add_option("--k", so.k, "tree order (k >= 2)")->capture_default_str();
    solve->add_option("--tau", so.tau, "temperature parameter, tau > 2")->required();
    solve->add_option("--q", so.q, "height period")->required();
    solve->add_option("--symmetry", so.symmetry, "word family")
        ->check(CLI::IsMember({"mirror", "nonmirror", "all", "type-up"}))
        ->capture_default_str();
    solve->add_flag("--experimental", so.experimental,
                    "allow q in [6,12] through the blind numeric search");
    solve->add_option("--format", so.format)->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    solve->add_option("--out", so.out, "write here instead of stdout");
    solve->callback([&]() {
        if (so.q < 1 || so.q > 12)
            throw std::invalid_argument("--q must be in [1,12]");
        if (so.q > 5 && !so.experimental)
            throw std::invalid_argument("periods above 5 need --experimental");
        const Params p = theta_from_tau(so.tau, so.k);
        const BranchFilter f = filter_of(so.symmetry);
        const std::vector<SolutionRecord> recs =
            so.q > 5 ? enumerate_solutions_numeric(p, so.q, f)
                     : enumerate_solutions(p, so.q, f);
        rc = emit(so.format == "text" ? solve_text(p, recs) : solve_json(p, recs), so.out);
    });

    // scan: count solutions across a tau window, flag count transitions.
    auto* scan = app.add_subcommand("scan", "tau scan of solution counts");
    ScanRequest sc;
    std::string sc_symmetry = "all";
    std::string sc_format = "csv";
    std::string sc_out;
    scan->add_option("--k", sc.k, "tree order (k >= 2)")->capture_default_str();
    scan->add_option("--q", sc.q, "height period")->required();
    scan->add_option("--symmetry", sc_symmetry, "row family, or all for both")
        ->check(CLI::IsMember({"mirror", "nonmirror", "all", "type-up"}))
        ->capture_default_str();
    scan->add_option("--tau-min", sc.tau_min)->capture_default_str();
    scan->add_option("--tau-max", sc.tau_max)->capture_default_str();
    scan->add_option("--steps", sc.steps, "grid intervals")->capture_default_str();
    scan->add_option("--format", sc_format)->check(CLI::IsMember({"csv"}))
        ->capture_default_str();
    scan->add_option("--out", sc_out, "write here instead of stdout");
    scan->callback([&]() {
        if (!(sc.tau_min > 2.0))
            throw std::invalid_argument("--tau-min must be above 2");
        if (!(sc.tau_max >= sc.tau_min))
            throw std::invalid_argument("--tau-max must be at least --tau-min");
        if (sc.q < 1 || sc.q > 5)
            throw std::invalid_argument("--q must be in [1,5]");
        sc.branch = filter_of(sc_symmetry);
        rc = emit(scan_csv(run_scan(sc)), sc_out);
    });

    // figure: the plot-data grids.
    auto* figure = app.add_subcommand("figure", "emit plot data as CSV");
    struct {
        std::string name;
        int k = 2;
        double tau = 8.0;
        int steps = 100;
        std::string format = "csv";
        std::string out;
    } fg;
    figure->add_option("name", fg.name,
                       "fig1 (branch curves over tau), fig2 (phi(x)-x), "
                       "fig3 (g(x)), fig4 (zeta windows)")
        ->required();
    figure->add_option("--k", fg.k, "tree order (k >= 2)")->capture_default_str();
    figure->add_option("--tau", fg.tau)->capture_default_str();
    figure->add_option("--steps", fg.steps, "grid intervals")->capture_default_str();
    figure->add_option("--format", fg.format)->check(CLI::IsMember({"csv"}))
        ->capture_default_str();
    figure->add_option("--out", fg.out, "write here instead of stdout");
    figure->callback([&]() {
        const Params p = theta_from_tau(fg.tau, fg.k);
        rc = emit(figure_csv(fg.name, p, fg.steps), fg.out);
    });

    // ggm: finite-ball joint distribution of edge gradients under one law.
    auto* ggm = app.add_subcommand("ggm", "gradient marginal on a tree ball");
    struct {
        int k = 2;
        double tau = 0.0;
        int q = 0;
        int solution = 0;
        int radius = 0;
        int pinned_s = 0;
        bool mixed = false;
        std::string mode = "exact";
        int trunc = 40;
        std::string format = "json";
        std::string out;
    } gg;
    ggm->add_option("--k", gg.k, "tree order (k >= 2)")->capture_default_str();
    ggm->add_option("--tau", gg.tau, "temperature parameter, tau > 2")->required();
    ggm->add_option("--q", gg.q, "height period")->required();
    ggm->add_option("--solution", gg.solution,
                    "index into the solve ordering at --symmetry all")
        ->capture_default_str();
    ggm->add_option("--radius", gg.radius, "ball radius (exact: <= 3, trunc: <= 1)")
        ->capture_default_str();
    auto* opt_pinned =
        ggm->add_option("--pinned", gg.pinned_s, "pin the root to this height class");
    auto* opt_mixed = ggm->add_flag("--mixed", gg.mixed,
                                    "sum the pinning class inside one normalization");
    opt_pinned->excludes(opt_mixed);
    opt_mixed->excludes(opt_pinned);
    ggm->add_option("--mode", gg.mode)->check(CLI::IsMember({"exact", "trunc"}))
        ->capture_default_str();
    auto* opt_trunc =
        ggm->add_option("--trunc", gg.trunc, "increment cutoff in trunc mode")
            ->capture_default_str();
    ggm->add_option("--format", gg.format)->check(CLI::IsMember({"json"}))
        ->capture_default_str();
    ggm->add_option("--out", gg.out, "write here instead of stdout");
    ggm->callback([&]() {
        if (gg.q < 1 || gg.q > 5)
            throw std::invalid_argument("--q must be in [1,5]");
        const bool exact = gg.mode == "exact";
        if (!exact && opt_trunc->count() == 0 && gg.trunc <= 0)
            throw std::invalid_argument("--trunc must be positive");
        if (exact && opt_trunc->count() > 0)
            throw std::invalid_argument("--trunc applies to --mode trunc only");
        if (gg.radius < 0 || gg.radius > (exact ? 3 : 1))
            throw std::invalid_argument(exact ? "--radius must be in [0,3] in exact mode"
                                              : "--radius must be in [0,1] in trunc mode");
        if (gg.trunc <= 0) throw std::invalid_argument("--trunc must be positive");
        const Params p = theta_from_tau(gg.tau, gg.k);
        const std::vector<SolutionRecord> recs =
            enumerate_solutions(p, gg.q, BranchFilter::All);
        if (gg.solution < 0 || gg.solution >= static_cast<int>(recs.size()))
            throw std::invalid_argument(
                "--solution " + std::to_string(gg.solution) + " out of range, have " +
                std::to_string(recs.size()) + " words at q = " + std::to_string(gg.q));
        const bool pin = opt_pinned->count() > 0;
        if (pin && (gg.pinned_s < 0 || gg.pinned_s >= gg.q))
            throw std::invalid_argument("--pinned must be a class in [0,q)");
        const BoundaryLaw law = from_word(recs[gg.solution].sol);
        const TreeBall ball = build_ball(gg.k, gg.radius);
        const GgmMode mode = exact ? GgmMode::ExactClass : GgmMode::Truncated;
        const int rcut = exact ? 0 : gg.trunc;
        const MarginalTable t = pin ? pinned_marginal(ball, law, gg.pinned_s, mode, rcut)
                                    : mixed_marginal(ball, law, mode, rcut);
        rc = emit(ggm_json(t), gg.out);
    });

    // verify: self-checks at fixed (k, tau); exit 0 only when everything holds.
    auto* verify = app.add_subcommand("verify", "run the residual and count checks");
    struct {
        int k = 2;
        double tau = 0.0;
        std::string format = "text";
        std::string out;
    } vf;
    verify->add_option("--k", vf.k, "tree order (k >= 2)")->capture_default_str();
    verify->add_option("--tau", vf.tau, "temperature parameter, tau > 2")->required();
    verify->add_option("--format", vf.format)->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    verify->add_option("--out", vf.out, "write here instead of stdout");
    verify->callback([&]() {
        const Params p = theta_from_tau(vf.tau, vf.k);
        const std::vector<VerifyCheck> checks = run_verify(p);
        rc = emit(vf.format == "json" ? verify_json(p, checks) : verify_text(p, checks),
                  vf.out);
        if (rc == 0)
            for (const VerifyCheck& c : checks)
                if (!c.pass) rc = 1;
    });

    // critical: locate one count transition inside a tau window.
    auto* critical = app.add_subcommand("critical", "locate a solution-count transition");
    struct {
        int k = 2;
        int q = 0;
        std::string symmetry = "mirror";
        double tau_min = 0.0;
        double tau_max = 0.0;
        std::string format = "json";
        std::string out;
    } cr;
    critical->add_option("--k", cr.k, "tree order (k >= 2)")->capture_default_str();
    critical->add_option("--q", cr.q, "height period")->required();
    critical->add_option("--symmetry", cr.symmetry, "row family")
        ->check(CLI::IsMember({"mirror", "nonmirror", "type-up"}))
        ->capture_default_str();
    critical->add_option("--tau-min", cr.tau_min, "window start, above 2")->required();
    critical->add_option("--tau-max", cr.tau_max, "window end")->required();
    critical->add_option("--format", cr.format)->check(CLI::IsMember({"json"}))
        ->capture_default_str();
    critical->add_option("--out", cr.out, "write here instead of stdout");
    critical->callback([&]() {
        if (!(cr.tau_min > 2.0))
            throw std::invalid_argument("--tau-min must be above 2");
        if (!(cr.tau_max > cr.tau_min))
            throw std::invalid_argument("--tau-max must exceed --tau-min");
        if (cr.q < 1 || cr.q > 5)
            throw std::invalid_argument("--q must be in [1,5]");
        const Params p = theta_from_tau(cr.tau_min, cr.k);
        const CriticalResult r =
            find_critical(p, cr.q, family_of(cr.symmetry), cr.tau_min, cr.tau_max);
        rc = emit(critical_json(p, r), cr.out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const OversizedEnumeration& e) {
        std::fprintf(stderr, "sosggm: %s\n", e.what());
        return 4;
    } catch (const NoTransition& e) {
        std::fprintf(stderr, "sosggm: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "sosggm: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "sosggm: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "sosggm: %s\n", e.what());
        return 1;
    }
    return rc;
}
