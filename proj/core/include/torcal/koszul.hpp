#pragma once

#include "torcal/poly.hpp"
#include "torcal/wmodule.hpp"

#include <map>

namespace torcal::gralg {

// Stable Koszul complex of a rank-one polynomial ring along its generator:
//   0 -> R -> R[1/u] -> 0
// H^0 vanishes, H^1 is the shifted divisible module (local cohomology).
struct KoszulRank1 {
  WModule k0, k1;
  std::vector<QMat> d0;  // unit maps per degree, indexed by k0.win
  WModule h1;            // cokernel with induced generator action
  bool h0_vanishes = false;
};

KoszulRank1 stable_koszul_rank1(RingTag poly_ring, Window win);

// the canonical payload H^1 = Sigma^{-gen_deg} (graded dual of R), realized
// directly; equals stable_koszul_rank1(...).h1 degreewise
WModule local_cohomology_payload(RingTag poly_ring, Window win, bool with_weyl);

// Stable Koszul complex of Q[c1, c2] along {c1, c2}:
//   0 -> R -> R[1/c1] + R[1/c2] -> R[1/c1c2] -> 0
// computed on a monomial exponent box; reported degrees are box-interior.
struct KoszulRank2Report {
  std::map<int, int> h0, h1, h2;  // internal degree -> dimension
};

KoszulRank2Report stable_koszul_rank2(int box, Window win);

}  // namespace torcal::gralg
