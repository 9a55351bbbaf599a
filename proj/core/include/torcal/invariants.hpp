#pragma once

#include "torcal/lattice.hpp"
#include "torcal/poly.hpp"
#include "torcal/qlinalg.hpp"

#include <vector>

namespace torcal::gralg {

// A finite group acting on the codegree-2 part of a polynomial ring
// Q[c_1..c_r] (generators in codegree 2).  Matrices act on the span of the
// variables; matrix(v * w) = matrix(v) * matrix(w).
struct RingAction {
  int rank = 1;
  std::vector<QMat> matrices;  // element 0 = identity, closed under product

  int order() const { return int(matrices.size()); }
  static RingAction trivial(int rank);
  // sign action c -> -c on Q[c]
  static RingAction sign_rank1();
  // action of a group catalog entry on H^2(BT): inverse transpose of the
  // cocharacter matrices
  static RingAction from_group(const lattice::GroupSpec& spec);
  // verify the homomorphism property by exhaustive multiplication
  bool closed_under_product() const;
};

// Molien series of the action: (1/|W|) sum_w 1/det(1 - t^2 w), coefficients
// of t^0..t^bound (odd coefficients vanish).
PowerSeries molien_series(const RingAction& action, int bound);

// Polynomial invariants up to a codegree bound.
struct InvariantRing {
  int rank = 1;
  int bound = 0;
  std::vector<Poly> generators;        // minimal homogeneous algebra generators
  std::vector<int> generator_codegrees;
  PowerSeries hilbert;                 // of the generated subalgebra, up to bound
  bool matches_molien = false;
};

// Reynolds average of p over the action
Poly reynolds(const RingAction& action, const Poly& p);

// basis (as coefficient columns) of the invariants in the given codegree
QMat invariant_basis(const RingAction& action, int codegree);

InvariantRing invariants(const RingAction& action, int bound);

// Solomon-type verification for the catalog root data:
//  (a) delta*kappa is invariant, where kappa = prod of positive-root Euler
//      classes and delta spans the top exterior power (twist by det);
//  (b) up to the codegree bound, every det-twisted invariant polynomial is
//      divisible by kappa.
bool solomon_check(const lattice::GroupSpec& spec, int bound);

// the product-of-positive-roots polynomial (codegree = 2 * #roots)
Poly weyl_skew_polynomial(const lattice::GroupSpec& spec);

// ---------------------------------------------------------------------------
// Euler classes

// Generating set of the multiplicative set attached to a flag: characters of
// T/K_s that are nontrivial on K_0, as linear forms in H^2.  Rank-1 quotients
// are generated by the coordinate class; rank-2 lists the primitive
// characters within the coefficient budget.
struct EulerSet {
  std::vector<std::vector<long>> characters;  // in the character lattice of T/K_s
  bool empty() const { return characters.empty(); }
};

EulerSet euler_set(const lattice::SubgroupPoset& poset, const lattice::Flag& flag,
                   long coefficient_budget = 1);

}  // namespace torcal::gralg
