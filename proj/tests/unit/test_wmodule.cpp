#include "torcal/wmodule.hpp"

#include "doctest.h"

#include <random>

using namespace torcal;
using namespace torcal::gralg;

namespace {

NormalForm random_nf(std::mt19937_64& rng, RingTag ring, bool with_weyl) {
  NormalForm nf;
  nf.ring = ring;
  nf.has_weyl = with_weyl;
  nf.weyl_gen_sign = (ring.rank == 1 && ring.gen_deg == -2) ? -1 : 1;
  int G = -ring.gen_deg;
  std::uniform_int_distribution<int> nsum(1, 4), kind(0, 3), sh(-3, 3), ex(1, 4), sg(0, 1);
  int n = nsum(rng);
  for (int i = 0; i < n; ++i) {
    Summand s;
    int k = kind(rng);
    s.kind = ring.laurent ? SummandKind::Laurent : SummandKind(k);
    if (ring.laurent) s.kind = SummandKind::Laurent;
    s.shift = sh(rng) * G;
    if (sg(rng)) s.shift += G / 2 * 0;  // keep even parity lanes; odd shifts below
    if (sg(rng)) s.shift += 1;          // odd-degree summands are legal too
    s.torsion_exp = ex(rng);
    s.sign = with_weyl ? (sg(rng) ? 1 : -1) : 1;
    nf.summands.push_back(s);
  }
  return canonicalize(nf);
}

}  // namespace

TEST_CASE("realize basic shapes") {
  RingTag qc = RingTag::poly(-2);
  NormalForm nf;
  nf.ring = qc;
  nf.summands = {{SummandKind::Free, 0, 1, 1}};
  WModule m = realize(nf, {-10, 4});
  CHECK(m.dim(0) == 1);
  CHECK(m.dim(-2) == 1);
  CHECK(m.dim(2) == 0);
  CHECK(m.dim(-1) == 0);
  CHECK(m.unbounded_below);
  CHECK_FALSE(m.unbounded_above);

  nf.summands = {{SummandKind::Divisible, 2, 1, 1}};
  WModule d = realize(nf, {-10, 10});
  CHECK(d.dim(2) == 1);
  CHECK(d.dim(4) == 1);
  CHECK(d.dim(0) == 0);
  // socle is killed by c
  CHECK(d.gen_at(2).is_zero());
  CHECK(d.gen_at(4)(0, 0) == 1);
}

TEST_CASE("normal form <-> windowed round trip") {
  std::mt19937_64 rng(20240817);
  for (RingTag ring : {RingTag::poly(-2), RingTag::laurent_ring(-2), RingTag::poly(-4)}) {
    for (bool weyl : {false, true}) {
      for (int rep = 0; rep < 40; ++rep) {
        NormalForm nf = random_nf(rng, ring, weyl);
        WModule m = realize(nf, {-40, 24});
        auto back = classify(m);
        REQUIRE(back.has_value());
        INFO("expected " << nf.str() << " got " << back->str());
        CHECK(canonicalize(nf).summands == back->summands);
      }
    }
  }
}

TEST_CASE("round trip over the rationals") {
  NormalForm nf;
  nf.ring = RingTag::rationals();
  nf.has_weyl = true;
  nf.summands = {{SummandKind::Free, 0, 1, 1}, {SummandKind::Free, 0, 1, -1},
                 {SummandKind::Free, 3, 1, -1}};
  WModule m = realize(nf, {-5, 5});
  auto back = classify(m);
  REQUIRE(back.has_value());
  CHECK(back->summands == canonicalize(nf).summands);
}

TEST_CASE("localization of Q[c]") {
  NormalForm nf;
  nf.ring = RingTag::poly(-2);
  nf.summands = {{SummandKind::Free, 0, 1, 1},
                 {SummandKind::Torsion, -2, 3, 1},
                 {SummandKind::Divisible, 0, 1, 1}};
  WModule m = realize(nf, {-40, 20});
  ScalarExtension loc = extend_scalars(m, RingTag::laurent_ring(-2), false);
  auto cl = classify(loc.out);
  REQUIRE(cl.has_value());
  // free -> laurent, torsion and divisible die
  REQUIRE(cl->summands.size() == 1);
  CHECK(cl->summands[0].kind == SummandKind::Laurent);
  // unit map is c^J on the free part: nonzero on the free generator
  int t = 0;
  QMat u = loc.unit_at(t, m);
  CHECK(u.rows() == 1);
  CHECK(u.cols() == 2);  // free generator and divisible socle in degree 0
  CHECK_FALSE(u.is_zero());
}

TEST_CASE("extension of scalars Q[d] -> Q[c] on examples") {
  // Q[c] (x)_{Q[d]} Q[d] = Q[c]
  NormalForm nf;
  nf.ring = RingTag::poly(-4);
  nf.summands = {{SummandKind::Free, 0, 1, 1}};
  WModule m = realize(nf, {-20, 8});
  ScalarExtension e = extend_scalars(m, RingTag::poly(-2), true);
  auto cl = classify(e.out);
  REQUIRE(cl.has_value());
  REQUIRE(cl->summands.size() == 1);
  CHECK(cl->summands[0].kind == SummandKind::Free);
  CHECK(cl->summands[0].shift == 0);
  CHECK(cl->summands[0].sign == 1);

  // Q[c] (x)_{Q[d]} Q[d]/(d) = Q[c]/(c^2): dims 1 at degrees 0 and -2
  nf.summands = {{SummandKind::Torsion, 0, 1, 1}};
  WModule t = realize(nf, {-20, 8});
  ScalarExtension et = extend_scalars(t, RingTag::poly(-2), true);
  CHECK(et.out.dim(0) == 1);
  CHECK(et.out.dim(-2) == 1);
  CHECK(et.out.dim(-4) == 0);
  CHECK(et.out.dim(2) == 0);
  // c: degree 0 -> degree -2 is onto, c^2 = 0
  CHECK(et.out.gen_at(0).rank() == 1);
  CHECK(et.out.gen_at(-2).is_zero());
  // sign twist: +1 on 1(x)x, -1 on c(x)x
  CHECK(et.out.weyl_at(0)(0, 0) == 1);
  CHECK(et.out.weyl_at(-2)(0, 0) == -1);

  // Q[c] (x)_{Q[d]} Q[d,d^-1] = Q[c,c^-1]
  nf.ring = RingTag::laurent_ring(-4);
  nf.summands = {{SummandKind::Laurent, 0, 1, 1}};
  WModule l = realize(nf, {-20, 8});
  ScalarExtension el = extend_scalars(l, RingTag::laurent_ring(-2), true);
  for (int deg = -16, cnt = 0; cnt < 12; deg += 2, ++cnt) CHECK(el.out.dim(deg) == 1);
}

TEST_CASE("fixed points of the sign action") {
  // (Q[c], c -> -c)^W = Q[d]
  NormalForm nf;
  nf.ring = RingTag::poly(-2);
  nf.has_weyl = true;
  nf.weyl_gen_sign = -1;
  nf.summands = {{SummandKind::Free, 0, 1, 1}};
  WModule m = realize(nf, {-20, 8});
  FixedPoints fp = fixed_points(m);
  CHECK(fp.out.ring == RingTag::poly(-4));
  CHECK(fp.out.dim(0) == 1);
  CHECK(fp.out.dim(-2) == 0);
  CHECK(fp.out.dim(-4) == 1);
  CHECK(fp.out.dim(-6) == 0);
  auto cl = classify(fp.out);
  REQUIRE(cl.has_value());
  REQUIRE(cl->summands.size() == 1);
  CHECK(cl->summands[0].kind == SummandKind::Free);

  // (Q[c,c^-1], c -> -c)^W = Q[d,d^-1]
  nf.ring = RingTag::laurent_ring(-2);
  nf.summands = {{SummandKind::Laurent, 0, 1, 1}};
  WModule ml = realize(nf, {-20, 8});
  FixedPoints fl = fixed_points(ml);
  CHECK(fl.out.dim(0) == 1);
  CHECK(fl.out.dim(2) == 0);
  CHECK(fl.out.dim(4) == 1);
  CHECK(fl.out.dim(-4) == 1);
}

TEST_CASE("normality of the classical examples") {
  auto make = [](std::vector<Summand> sums) {
    NormalForm nf;
    nf.ring = RingTag::poly(-2);
    nf.has_weyl = true;
    nf.weyl_gen_sign = -1;
    nf.summands = std::move(sums);
    return realize(nf, {-40, 16});
  };
  // the free module Q[c] is normal
  CHECK(is_normal_module(make({{SummandKind::Free, 0, 1, 1}})).normal);
  // the ideal (c) = Sigma^{-2} Q[c] with sign -1 on the generator is not
  auto bad = is_normal_module(make({{SummandKind::Free, -2, 1, -1}}));
  CHECK_FALSE(bad.normal);
  // Q[c,c^-1] is normal
  NormalForm nfl;
  nfl.ring = RingTag::laurent_ring(-2);
  nfl.has_weyl = true;
  nfl.weyl_gen_sign = -1;
  nfl.summands = {{SummandKind::Laurent, 0, 1, 1}};
  CHECK(is_normal_module(realize(nfl, {-40, 16})).normal);
}

TEST_CASE("hom dims oracle: endomorphisms of the divisible module") {
  NormalForm nf;
  nf.ring = RingTag::poly(-2);
  nf.summands = {{SummandKind::Divisible, 0, 1, 1}};
  WModule d = realize(nf, {-30, 30});
  std::vector<int> degs = {4, 2, 0, -2, -4, -6};
  auto h = hom_dims(d, d, degs);
  CHECK(h == std::vector<int>{0, 0, 1, 1, 1, 1});
}

TEST_CASE("localization and invariants commute (norms inverted)") {
  // invariants of the localization vs the norm-localization of the invariants
  NormalForm nf;
  nf.ring = RingTag::poly(-2);
  nf.has_weyl = true;
  nf.weyl_gen_sign = -1;
  nf.summands = {{SummandKind::Free, 0, 1, 1}};
  WModule r = realize(nf, {-44, 8});
  // route 1: localize at c, then take invariants
  WModule route1 = fixed_points(extend_scalars(r, RingTag::laurent_ring(-2), true).out).out;
  // route 2: invariants Q[d], then localize at the norm d = -c^2 (sign is a unit)
  WModule inv = fixed_points(r).out;
  WModule route2 = extend_scalars(inv, RingTag::laurent_ring(-4), false).out;
  for (int t = -40; t <= 0; ++t) CHECK(route1.dim(t) == route2.dim(t));
}

TEST_CASE("degreewise duals swap free and divisible towers") {
  NormalForm nf;
  nf.ring = RingTag::poly(-2);
  nf.summands = {{SummandKind::Free, 0, 1, 1}};
  WModule d = dual(realize(nf, {-30, 30}));
  auto cl = classify(d);
  REQUIRE(cl.has_value());
  REQUIRE(cl->summands.size() == 1);
  CHECK(cl->summands[0].kind == SummandKind::Divisible);
  CHECK(cl->summands[0].shift == 0);

  nf.summands = {{SummandKind::Torsion, 4, 3, 1}};
  auto ct = classify(dual(realize(nf, {-30, 30})));
  REQUIRE(ct.has_value());
  CHECK(ct->summands[0].kind == SummandKind::Torsion);
  CHECK(ct->summands[0].shift == -4 + 2 * 2);
  CHECK(ct->summands[0].torsion_exp == 3);
}
