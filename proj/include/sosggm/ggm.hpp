#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "sosggm/boundary_law.hpp"
#include "sosggm/errors.hpp"

namespace sosggm {

// Ball of given radius in the Cayley tree of order k: the root has k+1
// neighbours, every other interior vertex has k children. Interior vertices
// sit at depths 0..radius, boundary vertices at depth radius+1, and the edge
// set contains every edge meeting the interior, boundary edges included.
struct TreeBall {
    int k = 2;
    int radius = 0;
    std::vector<int> depth;                    // per vertex id
    std::vector<std::array<int, 2>> edges;     // (parent, child), BFS order
    std::vector<int> parent_edge;              // per vertex, -1 at the root
    std::vector<int> boundary;                 // vertex ids at depth radius+1
    std::vector<std::vector<int>> paths;       // per boundary vertex: edge ids root -> y

    int n_interior() const { return static_cast<int>(depth.size() - boundary.size()); }
};

// Throws BallTooLarge for radius > 8.
TreeBall build_ball(int k, int radius);

enum class GgmMode { ExactClass, Truncated };

// Joint distribution of the per-edge gradient labels on a ball. In
// ExactClass mode each edge carries its increment's residue class in Z_q
// (integer increments within a class are marginalized through the class
// sums); in Truncated mode each edge carries an integer increment clamped to
// [-rcut, rcut]. States are indexed in mixed radix with edge 0 as the
// fastest digit.
struct MarginalTable {
    GgmMode mode = GgmMode::ExactClass;
    int q = 1;
    int rcut = 0;
    Eigen::Index n_edges = 0;
    Eigen::Index n_symbols = 1;
    Eigen::VectorXd probs;
    double tail_bound = 0.0;  // Truncated mode: discarded-mass bound, else 0

    Eigen::Index size() const { return probs.size(); }
    int digit(Eigen::Index state, Eigen::Index edge) const;
    // The label the digit stands for: the class itself in ExactClass mode,
    // the increment digit - rcut in Truncated mode.
    int symbol(Eigen::Index state, Eigen::Index edge) const;
};

// Joint law of the edge labels under the measure pinned at the root to
// height class s. Throws OversizedEnumeration when the state space exceeds
// 10^7 entries.
MarginalTable pinned_marginal(const TreeBall& ball, const BoundaryLaw& law, int s,
                              GgmMode mode, int rcut = 0);

// Same with the pinning class summed inside one global normalization.
MarginalTable mixed_marginal(const TreeBall& ball, const BoundaryLaw& law,
                             GgmMode mode, int rcut = 0);

// Total-variation distance between two tables on the same state space.
double total_variation(const MarginalTable& a, const MarginalTable& b);

// Collapse a Truncated table onto residue classes mod q.
MarginalTable project_to_classes(const MarginalTable& t, int q);

// Marginal of the first m edges (BFS prefix; for nested balls these are
// exactly the smaller ball's edges).
MarginalTable marginalize_prefix(const MarginalTable& t, Eigen::Index m);

// Distribution of a single edge's digit.
Eigen::VectorXd edge_marginal(const MarginalTable& t, Eigen::Index edge);

// Marginal of the radius r_small ball computed directly versus by summing
// the r_large table down, as total-variation distance. Pinned at s = 0.
double consistency_check(const BoundaryLaw& law, int k, int r_small, int r_large,
                         GgmMode mode, int rcut = 0);

}  // namespace sosggm
