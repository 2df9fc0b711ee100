#include "sosggm/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sosggm {

namespace {

void push_pair(std::vector<std::array<int, 2>>& cert, int l, int r) {
    if (l == r) return;
    if (l > r) std::swap(l, r);
    for (const auto& e : cert)
        if (e[0] == l && e[1] == r) return;
    cert.push_back({l, r});
}

}  // namespace

SymmetryClass classify(const Eigen::Ref<const Eigen::VectorXd>& word, double tol) {
    const int q = static_cast<int>(word.size());

    // Mirror axis through u_0. The i = -1 condition u_{q-1} = u_1 coincides
    // with i = 1, so looping i = 1..floor(q/2) checks the whole family.
    {
        SymmetryClass c;
        c.kind = SymmetryClass::Kind::Mirror;
        bool ok = true;
        for (int i = 1; i <= q / 2 && ok; ++i) {
            const int l = i;
            const int r = (q - i) % q;
            if (l == r) continue;
            if (std::abs(word[l] - word[r]) > tol) ok = false;
            else push_pair(c.certificate, l, r);
        }
        if (ok) return c;
    }

    for (int p = 1; p < q; ++p) {
        SymmetryClass c;
        c.kind = SymmetryClass::Kind::TwoMirror;
        c.p = p;
        bool ok = true;
        for (int i = 0; i <= p / 2 && ok; ++i) {
            const int l = i;
            const int r = p - i;
            if (l == r) continue;
            if (std::abs(word[l] - word[r]) > tol) ok = false;
            else push_pair(c.certificate, l, r);
        }
        for (int j = 0; j <= (q - p) / 2 && ok; ++j) {
            const int l = (p + j) % q;
            const int r = (q - j) % q;
            if (l == r) continue;
            if (std::abs(word[l] - word[r]) > tol) ok = false;
            else push_pair(c.certificate, l, r);
        }
        if (ok) return c;
    }

    return SymmetryClass{};
}

int lex_compare(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b, double tol) {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        if (std::abs(d) > tol) return d < 0.0 ? -1 : 1;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

CanonicalWord canonical_form(const Eigen::Ref<const Eigen::VectorXd>& word, double tol) {
    const Eigen::Index q = word.size();

    std::vector<Eigen::Index> starts;
    for (Eigen::Index r = 0; r < q; ++r)
        if (std::abs(word[r] - 1.0) <= tol) starts.push_back(r);
    if (starts.empty())
        for (Eigen::Index r = 0; r < q; ++r) starts.push_back(r);

    CanonicalWord best;
    bool have = false;
    Eigen::VectorXd cand(q);
    for (const Eigen::Index r : starts) {
        for (Eigen::Index i = 0; i < q; ++i) cand[i] = word[(r + i) % q];
        cand /= cand[0];
        if (!have || lex_compare(cand, best.word, tol) < 0) {
            best.word = cand;
            best.shift_applied = r;
            have = true;
        }
    }
    return best;
}

std::vector<PeriodicSolution> dedup(std::vector<PeriodicSolution> solutions, double tol) {
    struct Entry {
        PeriodicSolution sol;
        Eigen::VectorXd canon;
    };
    std::vector<Entry> classes;

    for (auto& s : solutions) {
        PeriodicSolution r = std::move(s);
        const int d = minimal_period(r.word);
        if (d < r.word.size()) {
            Eigen::VectorXd reduced = r.word.head(d);
            r.word = std::move(reduced);
            r.q = d;
            r.system_residual = va_residual(r.word, r.params);
            const double um1 = r.word[d - 1];
            const double u1 = r.word[1 % d];
            r.branch = std::abs(um1 - u1) < 1e-9 ? Branch::Mirror : Branch::NonMirror;
        }
        Eigen::VectorXd canon = canonical_form(r.word, tol).word;

        bool merged = false;
        for (auto& e : classes) {
            if (e.canon.size() != canon.size()) continue;
            if (lex_compare(canon, e.canon, tol) != 0) continue;
            // Keep the lexicographically smallest representative so the
            // result does not depend on input order.
            if (lex_compare(r.word, e.sol.word, tol) < 0) e.sol = std::move(r);
            merged = true;
            break;
        }
        if (!merged) classes.push_back({std::move(r), std::move(canon)});
    }

    std::sort(classes.begin(), classes.end(), [tol](const Entry& a, const Entry& b) {
        if (a.sol.q != b.sol.q) return a.sol.q < b.sol.q;
        return lex_compare(a.canon, b.canon, tol) < 0;
    });

    std::vector<PeriodicSolution> out;
    out.reserve(classes.size());
    for (auto& e : classes) out.push_back(std::move(e.sol));
    return out;
}

}  // namespace sosggm
