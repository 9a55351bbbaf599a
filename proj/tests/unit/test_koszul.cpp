#include "torcal/koszul.hpp"

#include "doctest.h"

using namespace torcal;
using namespace torcal::gralg;

TEST_CASE("stable koszul complex of Q[c]") {
  KoszulRank1 k = stable_koszul_rank1(RingTag::poly(-2), {-30, 30});
  CHECK(k.h0_vanishes);
  // H^1 = Sigma^2 (dual of Q[c]): dims 1 in even degrees >= 2
  auto cl = classify(k.h1);
  REQUIRE(cl.has_value());
  REQUIRE(cl->summands.size() == 1);
  CHECK(cl->summands[0].kind == SummandKind::Divisible);
  CHECK(cl->summands[0].shift == 2);
  // matches the closed-form payload
  WModule payload = local_cohomology_payload(RingTag::poly(-2), {-30, 30}, false);
  for (int t = -20; t <= 20; ++t) CHECK(k.h1.dim(t) == payload.dim(t));
}

TEST_CASE("stable koszul complex of Q[d]") {
  KoszulRank1 k = stable_koszul_rank1(RingTag::poly(-4), {-40, 40});
  CHECK(k.h0_vanishes);
  auto cl = classify(k.h1);
  REQUIRE(cl.has_value());
  CHECK(cl->summands[0].shift == 4);
}

TEST_CASE("empty generator lists are rejected") {
  CHECK_THROWS(stable_koszul_rank1(RingTag::rationals(), {-10, 10}));
}

TEST_CASE("rank-2 stable koszul: local cohomology in top degree only") {
  KoszulRank2Report rep = stable_koszul_rank2(14, {-20, 20});
  // H^0 and H^1 vanish; H^2 has the dual Hilbert pattern: dim in degree 2k is k-1
  for (auto& [t, d] : rep.h0) CHECK(d == 0);
  for (auto& [t, d] : rep.h1) CHECK(d == 0);
  for (auto& [t, d] : rep.h2) {
    if (t < 4) CHECK(d == 0);
    else CHECK(d == t / 2 - 1);
  }
  CHECK(rep.h2.at(8) == 3);
}
