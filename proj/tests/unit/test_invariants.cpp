#include "torcal/invariants.hpp"

#include "doctest.h"

#include <random>

using namespace torcal;
using namespace torcal::gralg;
using torcal::lattice::GroupName;
using torcal::lattice::GroupSpec;

TEST_CASE("molien series closed forms") {
  // order-2 sign action on Q[c]: 1 + t^4 + t^8 + ...
  PowerSeries m = molien_series(RingAction::sign_rank1(), 16);
  CHECK(m == graded_free_series({4}, 16));
  // trivial group, rank 1: 1 + t^2 + t^4 + ...
  CHECK(molien_series(RingAction::trivial(1), 10) == graded_free_series({2}, 10));
  // Weyl of SU(3) on the rank-2 ring: 1/((1-t^4)(1-t^6))
  RingAction su3 = RingAction::from_group(GroupSpec::get(GroupName::SU3));
  REQUIRE(su3.closed_under_product());
  CHECK(molien_series(su3, 30) == graded_free_series({4, 6}, 30));
}

TEST_CASE("invariant ring of the sign action is generated by c^2") {
  InvariantRing inv = invariants(RingAction::sign_rank1(), 8);
  REQUIRE(inv.generators.size() == 1);
  CHECK(inv.generator_codegrees == std::vector<int>{4});
  CHECK(inv.matches_molien);
}

TEST_CASE("trivial action keeps the coordinate generators") {
  InvariantRing inv = invariants(RingAction::trivial(2), 8);
  CHECK(inv.generator_codegrees == std::vector<int>{2, 2});
  CHECK(inv.matches_molien);
}

TEST_CASE("SU(3) Weyl invariants: generators in codegrees 4 and 6") {
  RingAction act = RingAction::from_group(GroupSpec::get(GroupName::SU3));
  InvariantRing inv = invariants(act, 12);
  CHECK(inv.generator_codegrees == std::vector<int>{4, 6});
  CHECK(inv.matches_molien);
}

TEST_CASE("reynolds is idempotent") {
  std::mt19937_64 rng(11);
  RingAction act = RingAction::from_group(GroupSpec::get(GroupName::SU3));
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int rep = 0; rep < 10; ++rep) {
    Poly p(2);
    for (auto& e : monomials_of_degree(2, 3)) p.add_term(e, coeff(rng));
    Poly r = reynolds(act, p);
    CHECK(reynolds(act, r) == r);
    for (auto& w : act.matrices) CHECK(r.substitute_linear(w) == r);
  }
}

TEST_CASE("solomon check for the catalog groups") {
  CHECK(solomon_check(GroupSpec::get(GroupName::SO3), 20));
  CHECK(solomon_check(GroupSpec::get(GroupName::SU3), 20));
  // no positive roots: kappa = 1 and the check degenerates to true
  CHECK(solomon_check(GroupSpec::get(GroupName::Circle), 10));
  CHECK(solomon_check(GroupSpec::get(GroupName::O2), 10));
}

TEST_CASE("euler sets") {
  using namespace torcal::lattice;
  const GroupSpec& circle = GroupSpec::get(GroupName::Circle);
  SubgroupPoset p = build_poset(circle, TruncationParams{4});
  int t = p.torus_index();
  int c3 = p.index_of(ToralSubgroup::cyclic(3));
  EulerSet es = euler_set(p, Flag{{t, c3}});
  REQUIRE(es.characters.size() == 1);
  CHECK(es.characters[0] == std::vector<long>{1});
  CHECK(euler_set(p, Flag{{c3}}).empty());

  // rank 2 sample: T > S^1 > 1 over the 2-torus
  const GroupSpec& t2 = GroupSpec::get(GroupName::Torus2);
  std::vector<ToralSubgroup> list = {ToralSubgroup::circle2({1, 0}),
                                     ToralSubgroup::finite2(1, {{1, 0}, {0, 1}})};
  SubgroupPoset q = build_poset(t2, list);
  int tt = q.torus_index();
  int s1 = q.index_of(ToralSubgroup::circle2({1, 0}));
  int triv = q.index_of(ToralSubgroup::finite2(1, {{1, 0}, {0, 1}}));
  // characters of T^2 dying on S^1 but not on T^2: multiples of (0,1)... none
  // nontrivial on T survive; for the pair (T, S^1) the quotient is a circle
  EulerSet e_ts = euler_set(q, Flag{{tt, s1}});
  REQUIRE(e_ts.characters.size() == 1);
  CHECK(e_ts.characters[0] == std::vector<long>{0, 1});
  // pair (S^1, 1): characters nontrivial on S^1: a != 0
  EulerSet e_s1 = euler_set(q, Flag{{s1, triv}});
  for (auto& a : e_s1.characters) CHECK(a[0] != 0);
  CHECK_FALSE(e_s1.empty());
}
