#include "sosggm/ggm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace sosggm {

namespace {

constexpr std::int64_t kMaxStates = 10'000'000;

std::int64_t checked_state_count(Eigen::Index n_symbols, Eigen::Index n_edges) {
    std::int64_t total = 1;
    for (Eigen::Index i = 0; i < n_edges; ++i) {
        total *= n_symbols;
        if (total > kMaxStates)
            throw OversizedEnumeration("state space exceeds 10^7 entries");
    }
    return total;
}

int mod_q(long long v, int q) { return static_cast<int>(((v % q) + q) % q); }

}  // namespace

TreeBall build_ball(int k, int radius) {
    if (k < 2) throw std::invalid_argument("build_ball: k must be >= 2");
    if (radius < 0) throw std::invalid_argument("build_ball: radius must be >= 0");
    if (radius > 8) throw BallTooLarge("build_ball: radius > 8 rejected");

    TreeBall ball;
    ball.k = k;
    ball.radius = radius;

    ball.depth.push_back(0);
    ball.parent_edge.push_back(-1);

    // BFS by construction order: ids are assigned level by level, so the edge
    // list of a smaller concentric ball is a prefix of a larger one's.
    for (std::size_t v = 0; v < ball.depth.size(); ++v) {
        const int d = ball.depth[v];
        if (d > radius) continue;  // boundary vertices get no children
        const int fanout = (v == 0) ? k + 1 : k;
        for (int c = 0; c < fanout; ++c) {
            const int child = static_cast<int>(ball.depth.size());
            ball.depth.push_back(d + 1);
            ball.edges.push_back({static_cast<int>(v), child});
            ball.parent_edge.push_back(static_cast<int>(ball.edges.size()) - 1);
        }
    }

    for (std::size_t v = 0; v < ball.depth.size(); ++v)
        if (ball.depth[v] == radius + 1) ball.boundary.push_back(static_cast<int>(v));

    for (int y : ball.boundary) {
        std::vector<int> path;
        for (int v = y; ball.parent_edge[v] >= 0; v = ball.edges[ball.parent_edge[v]][0])
            path.push_back(ball.parent_edge[v]);
        std::reverse(path.begin(), path.end());
        ball.paths.push_back(std::move(path));
    }

    return ball;
}

int MarginalTable::digit(Eigen::Index state, Eigen::Index edge) const {
    Eigen::Index s = state;
    for (Eigen::Index i = 0; i < edge; ++i) s /= n_symbols;
    return static_cast<int>(s % n_symbols);
}

int MarginalTable::symbol(Eigen::Index state, Eigen::Index edge) const {
    const int d = digit(state, edge);
    return mode == GgmMode::Truncated ? d - rcut : d;
}

namespace {

// Shared enumeration core. For every joint label state, accumulates the
// per-boundary-vertex label (class or integer path sum) along BFS edges and
// multiplies the boundary factors; the per-edge factors are precomputed per
// symbol.
MarginalTable enumerate_table(const TreeBall& ball, const BoundaryLaw& law,
                              GgmMode mode, int rcut, bool mixed, int pin_s) {
    const int q = law.q;
    MarginalTable t;
    t.mode = mode;
    t.q = q;
    t.rcut = mode == GgmMode::Truncated ? rcut : 0;
    t.n_edges = static_cast<Eigen::Index>(ball.edges.size());
    t.n_symbols = mode == GgmMode::ExactClass ? q : 2 * rcut + 1;
    if (mode == GgmMode::Truncated && rcut < 0)
        throw std::invalid_argument("truncation radius must be >= 0");

    const std::int64_t total = checked_state_count(t.n_symbols, t.n_edges);

    // Per-symbol edge weight: class sums in exact mode, theta^|zeta| in
    // truncated mode.
    Eigen::VectorXd edge_w(t.n_symbols);
    if (mode == GgmMode::ExactClass) {
        edge_w = class_sums(law.params, q).S;
    } else {
        for (Eigen::Index d = 0; d < t.n_symbols; ++d)
            edge_w[d] = std::pow(law.params.theta, std::abs(static_cast<int>(d) - rcut));
    }

    const Eigen::Index nv = static_cast<Eigen::Index>(ball.depth.size());
    std::vector<long long> acc(static_cast<std::size_t>(nv), 0);
    std::vector<int> digits(static_cast<std::size_t>(t.n_edges), 0);

    t.probs.resize(total);
    double Z = 0.0;
    for (std::int64_t state = 0; state < total; ++state) {
        double w = 1.0;
        acc[0] = 0;
        for (Eigen::Index b = 0; b < t.n_edges; ++b) {
            const int d = digits[static_cast<std::size_t>(b)];
            w *= edge_w[d];
            const int u = ball.edges[static_cast<std::size_t>(b)][0];
            const int v = ball.edges[static_cast<std::size_t>(b)][1];
            const long long inc = mode == GgmMode::ExactClass ? d : d - rcut;
            acc[v] = acc[u] + inc;
        }

        double bf = 0.0;
        if (mixed) {
            for (int s = 0; s < q; ++s) {
                double prod = 1.0;
                for (int y : ball.boundary) prod *= law.z[mod_q(s + acc[y], q)];
                bf += prod;
            }
        } else {
            bf = 1.0;
            for (int y : ball.boundary) bf *= law.z[mod_q(pin_s + acc[y], q)];
        }

        w *= bf;
        t.probs[state] = w;
        Z += w;

        // Increment the mixed-radix counter (edge 0 fastest).
        for (Eigen::Index b = 0; b < t.n_edges; ++b) {
            if (++digits[static_cast<std::size_t>(b)] < t.n_symbols) break;
            digits[static_cast<std::size_t>(b)] = 0;
        }
    }

    t.probs /= Z;

    if (mode == GgmMode::Truncated) {
        const double th = law.params.theta;
        t.tail_bound = (law.params.k + 1) * static_cast<double>(t.n_edges) *
                       std::pow(th, rcut + 1) / (1.0 - th);
    }
    return t;
}

}  // namespace

MarginalTable pinned_marginal(const TreeBall& ball, const BoundaryLaw& law, int s,
                              GgmMode mode, int rcut) {
    return enumerate_table(ball, law, mode, rcut, false, mod_q(s, law.q));
}

MarginalTable mixed_marginal(const TreeBall& ball, const BoundaryLaw& law,
                             GgmMode mode, int rcut) {
    return enumerate_table(ball, law, mode, rcut, true, 0);
}

double total_variation(const MarginalTable& a, const MarginalTable& b) {
    if (a.size() != b.size() || a.n_symbols != b.n_symbols)
        throw std::invalid_argument("total_variation: incompatible tables");
    return 0.5 * (a.probs - b.probs).cwiseAbs().sum();
}

MarginalTable project_to_classes(const MarginalTable& t, int q) {
    MarginalTable out;
    out.mode = GgmMode::ExactClass;
    out.q = q;
    out.n_edges = t.n_edges;
    out.n_symbols = q;
    const std::int64_t total = checked_state_count(q, t.n_edges);
    out.probs = Eigen::VectorXd::Zero(total);

    std::vector<int> digits(static_cast<std::size_t>(t.n_edges), 0);
    for (Eigen::Index state = 0; state < t.size(); ++state) {
        Eigen::Index idx = 0;
        Eigen::Index mult = 1;
        for (Eigen::Index b = 0; b < t.n_edges; ++b) {
            const int zeta = digits[static_cast<std::size_t>(b)] - t.rcut;
            idx += static_cast<Eigen::Index>(mod_q(zeta, q)) * mult;
            mult *= q;
        }
        out.probs[idx] += t.probs[state];

        for (Eigen::Index b = 0; b < t.n_edges; ++b) {
            if (++digits[static_cast<std::size_t>(b)] < t.n_symbols) break;
            digits[static_cast<std::size_t>(b)] = 0;
        }
    }
    return out;
}

MarginalTable marginalize_prefix(const MarginalTable& t, Eigen::Index m) {
    if (m > t.n_edges) throw std::invalid_argument("marginalize_prefix: too many edges");
    MarginalTable out = t;
    out.n_edges = m;
    Eigen::Index keep = 1;
    for (Eigen::Index i = 0; i < m; ++i) keep *= t.n_symbols;
    out.probs = Eigen::VectorXd::Zero(keep);
    for (Eigen::Index state = 0; state < t.size(); ++state)
        out.probs[state % keep] += t.probs[state];
    return out;
}

Eigen::VectorXd edge_marginal(const MarginalTable& t, Eigen::Index edge) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(t.n_symbols);
    Eigen::Index div = 1;
    for (Eigen::Index i = 0; i < edge; ++i) div *= t.n_symbols;
    for (Eigen::Index state = 0; state < t.size(); ++state)
        m[(state / div) % t.n_symbols] += t.probs[state];
    return m;
}

double consistency_check(const BoundaryLaw& law, int k, int r_small, int r_large,
                         GgmMode mode, int rcut) {
    if (!(r_small < r_large && r_large <= 3))
        throw std::invalid_argument("consistency_check: need r_small < r_large <= 3");
    const TreeBall small = build_ball(k, r_small);
    const TreeBall large = build_ball(k, r_large);
    const MarginalTable direct = pinned_marginal(small, law, 0, mode, rcut);
    const MarginalTable folded =
        marginalize_prefix(pinned_marginal(large, law, 0, mode, rcut),
                           static_cast<Eigen::Index>(small.edges.size()));
    return total_variation(direct, folded);
}

}  // namespace sosggm
