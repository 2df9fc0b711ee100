#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "sosggm/periodic.hpp"

namespace sosggm {

// Shape classification of a periodic word (u_0, ..., u_{q-1}) read cyclically,
// so u_{-1} means u_{q-1}. Mirror: u_i = u_{q-i} for i in {-1, 0, ..., floor(q/2)}.
// TwoMirror(p): a second reflection axis through position p < q, i.e.
// u_i = u_{p-i} for i <= floor(p/2) and u_{p+j} = u_{q-j} for j <= floor((q-p)/2).
struct SymmetryClass {
  enum class Kind { Mirror, TwoMirror, None };

  Kind kind = Kind::None;
  int p = -1;  // reflection axis offset, only meaningful for TwoMirror
  // Verified nontrivial index equalities u_lhs == u_rhs, indices mod q.
  std::vector<std::array<int, 2>> certificate;
};

// Strongest applicable class: Mirror first, then TwoMirror with the smallest
// admissible axis p in 1..q-1, else None. Equalities hold within tol.
SymmetryClass classify(const Eigen::Ref<const Eigen::VectorXd>& word,
                       double tol = 1e-9);

struct CanonicalWord {
  Eigen::VectorXd word;
  Eigen::Index shift_applied = 0;
};

// Representative of the word's class under cyclic shifts and positive scaling.
// Candidate rotations are the ones starting at an entry equal to 1 within tol
// (every solver word contains its own u_0 = 1); if none exists, all rotations
// are candidates. Each candidate is divided by its first entry and the
// lexicographically smallest result wins, ties going to the smallest shift.
CanonicalWord canonical_form(const Eigen::Ref<const Eigen::VectorXd>& word,
                             double tol = 1e-9);

// Entrywise three-way comparison with tolerance: entries closer than tol are
// equal, otherwise the first differing entry decides. Shorter vectors sort
// first when one is a prefix of the other.
int lex_compare(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b, double tol = 1e-9);

// One representative per canonical form. Words are first reduced to their
// minimal period (the constant word becomes q = 1), then keyed by
// (q, canonical word). Among duplicates the representative with the
// lexicographically smallest word is kept, so the result does not depend on
// input order. Output sorted by (q, canonical word).
std::vector<PeriodicSolution> dedup(std::vector<PeriodicSolution> solutions,
                                    double tol = 1e-9);

}  // namespace sosggm
