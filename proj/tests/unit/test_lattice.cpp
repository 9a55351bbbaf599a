#include "torcal/lattice.hpp"

#include "doctest.h"

#include <set>

using namespace torcal::lattice;

namespace {
const GroupSpec& so3() { return GroupSpec::get(GroupName::SO3); }
const GroupSpec& circle() { return GroupSpec::get(GroupName::Circle); }
const GroupSpec& su3() { return GroupSpec::get(GroupName::SU3); }
const GroupSpec& o2() { return GroupSpec::get(GroupName::O2); }

SubgroupPoset su3_sample_poset() {
  std::vector<ToralSubgroup> list = {
      ToralSubgroup::finite2(1, {{1, 0}, {0, 1}}),   // trivial
      ToralSubgroup::finite2(3, {{1, 0}, {1, 0}}),   // center, generated by (1/3, 1/3)
      ToralSubgroup::circle2({1, 1}),  ToralSubgroup::circle2({2, -1}),
      ToralSubgroup::circle2({1, -2}),               // reflection-fixed circles
      ToralSubgroup::circle2({1, 2}),  ToralSubgroup::circle2({2, 1}),
      ToralSubgroup::circle2({1, -3}), ToralSubgroup::circle2({3, -1}),
      ToralSubgroup::circle2({2, -3}), ToralSubgroup::circle2({3, -2}),
      ToralSubgroup::circle2({1, -1}), ToralSubgroup::circle2({1, 0}),
      ToralSubgroup::circle2({0, 1}),
  };
  return build_poset(su3(), list);
}
}  // namespace

TEST_CASE("SO3 poset with N = 3") {
  SubgroupPoset p = build_poset(so3(), TruncationParams{3});
  REQUIRE(p.subgroups.size() == 4);
  CHECK(p.subgroups[0].label() == "C1");
  CHECK(p.subgroups[3].label() == "T");
  // cotoral pairs: exactly (T, C_n)
  CHECK(p.cotoral_pairs.size() == 3);
  for (auto& [k, l] : p.cotoral_pairs) CHECK(p.subgroups[k].dim == 1);
  // the Weyl element fixes every subgroup
  for (int i = 0; i < 4; ++i) CHECK(p.act(1, i) == i);
}

TEST_CASE("circle poset with N = 1") {
  SubgroupPoset p = build_poset(circle(), TruncationParams{1});
  CHECK(p.subgroups.size() == 2);
  CHECK(p.cotoral_pairs.size() == 1);
}

TEST_CASE("cotoral order") {
  ToralSubgroup t = ToralSubgroup::full_torus(1);
  CHECK(cotoral_leq(t, ToralSubgroup::cyclic(5)));
  CHECK_FALSE(cotoral_leq(ToralSubgroup::cyclic(4), ToralSubgroup::cyclic(2)));
  CHECK(cotoral_leq(ToralSubgroup::cyclic(4), ToralSubgroup::cyclic(4)));
  CHECK_FALSE(cotoral_leq(ToralSubgroup::cyclic(2), ToralSubgroup::cyclic(4)));

  // rank 2: T/S^1 is a torus; S^1 x C2 over S^1 is not cotoral
  ToralSubgroup t2 = ToralSubgroup::full_torus(2);
  ToralSubgroup s1 = ToralSubgroup::circle2({1, 0});
  ToralSubgroup s1c2 = ToralSubgroup::circle2({1, 0}, 2);
  CHECK(cotoral_leq(t2, s1));
  CHECK(subgroup_leq(s1c2, s1));
  CHECK_FALSE(cotoral_leq(s1c2, s1));
  CHECK(cotoral_leq(t2, s1c2));
}

TEST_CASE("flag enumeration") {
  SubgroupPoset p = build_poset(so3(), TruncationParams{2});
  auto flags = enumerate_flags(p, 1);
  CHECK(flags.size() == 5);  // (C1), (C2), (T), (T>C1), (T>C2)
  auto f2 = enumerate_flags(build_poset(circle(), TruncationParams{1}), 2);
  for (auto& f : f2) CHECK(f.length() <= 1);  // no length-2 flags in rank 1

  // rank-2 sample T > S^1 > 1
  std::vector<ToralSubgroup> list = {ToralSubgroup::circle2({1, 0}),
                                     ToralSubgroup::finite2(1, {{1, 0}, {0, 1}})};
  SubgroupPoset q = build_poset(GroupSpec::get(GroupName::Torus2), list);
  auto f3 = enumerate_flags(q, 2);
  bool has_len2 = false;
  for (auto& f : f3) has_len2 = has_len2 || f.length() == 2;
  CHECK(has_len2);
}

TEST_CASE("transport category composition laws") {
  SubgroupPoset p = build_poset(so3(), TruncationParams{2});
  TransportCategory cat = build_transport_category(p, 1);
  CHECK(cat.morphisms.size() <= 200);
  // (i, e)(1, w) = (i, w)
  for (auto& m : cat.morphisms) {
    if (m.w != 0) continue;
    for (auto& n : cat.morphisms) {
      if (!(n.source == m.target) || !(n.incl_target == n.source)) continue;
      TransportMorphism c = transport_compose(p, m, n);
      CHECK(c.source == m.source);
      CHECK(c.incl_target == m.incl_target);
      CHECK(c.w == n.w);
    }
  }
  // associativity on all composable triples
  int triples = 0;
  for (auto& a : cat.morphisms)
    for (auto& b : cat.morphisms) {
      if (!(a.target == b.source)) continue;
      TransportMorphism ab = transport_compose(p, a, b);
      for (auto& c : cat.morphisms) {
        if (!(b.target == c.source)) continue;
        TransportMorphism left = transport_compose(p, ab, c);
        TransportMorphism right = transport_compose(p, a, transport_compose(p, b, c));
        CHECK(left.source == right.source);
        CHECK(left.incl_target == right.incl_target);
        CHECK(left.w == right.w);
        ++triples;
      }
    }
  CHECK(triples > 0);
  // factorization iv = (i, v) = v i^v
  for (auto& m : cat.morphisms) {
    TransportMorphism iv{m.source, m.incl_target, 0, m.incl_target};
    TransportMorphism v{m.incl_target, m.incl_target, m.w, m.target};
    TransportMorphism c1 = transport_compose(p, iv, v);
    CHECK(c1.incl_target == m.incl_target);
    CHECK(c1.w == m.w);
  }
}

TEST_CASE("SO3 component structure catalog") {
  SubgroupPoset p = build_poset(so3(), TruncationParams{3});
  ComponentStructure cs = component_structure(p, 1);
  for (std::size_t i = 0; i < cs.flags.size(); ++i) {
    const Flag& f = cs.flags[i];
    bool is_c1 = f.length() == 0 && p.subgroups[f.top()].label() == "C1";
    CHECK(cs.we[i].size() == (is_c1 ? 2 : 1));
    CHECK(cs.isotropy[i].size() == 2);
    CHECK(cs.residual_order(int(i)) == (is_c1 ? 1 : 2));
  }
}

TEST_CASE("O2 component structure is discrete") {
  SubgroupPoset p = build_poset(o2(), TruncationParams{3});
  ComponentStructure cs = component_structure(p, 1);
  for (std::size_t i = 0; i < cs.flags.size(); ++i) CHECK(cs.we[i].size() == 1);
  auto [dec, nor] = check_structure_flags(cs);
  CHECK(dec);
  CHECK(nor);
}

TEST_CASE("SU3 component structure catalog") {
  SubgroupPoset p = su3_sample_poset();
  ComponentStructure cs = component_structure(p, 0);
  auto we_of = [&](const ToralSubgroup& s) {
    int fi = cs.flag_index(Flag{{p.index_of(s)}});
    REQUIRE(fi >= 0);
    return cs.we[fi];
  };
  auto iso_of = [&](const ToralSubgroup& s) {
    int fi = cs.flag_index(Flag{{p.index_of(s)}});
    return cs.isotropy[fi];
  };
  // reflection-fixed circles: W^e = isotropy of order 2
  for (auto v : std::vector<std::vector<long>>{{1, 1}, {2, -1}, {1, -2}}) {
    ToralSubgroup s = ToralSubgroup::circle2(v);
    CHECK(we_of(s).size() == 2);
    CHECK(we_of(s) == iso_of(s));
  }
  // a generic circle: trivial W^e and trivial isotropy
  ToralSubgroup gen = ToralSubgroup::circle2({1, 2});
  CHECK(we_of(gen).size() == 1);
  // trivial subgroup and the center: full Weyl group
  CHECK(we_of(ToralSubgroup::finite2(1, {{1, 0}, {0, 1}})).size() == 6);
  CHECK(we_of(ToralSubgroup::finite2(3, {{1, 0}, {1, 0}})).size() == 6);
  // the torus: trivial identity component
  CHECK(we_of(ToralSubgroup::full_torus(2)).size() == 1);
}

TEST_CASE("decreasing and normality verdicts") {
  SubgroupPoset p = build_poset(so3(), TruncationParams{3});
  // subgroup-level Lie structure is not decreasing
  ComponentStructure on_subs = component_structure(p, 0, StructureKind::Lie, false);
  auto [dec0, nor0] = check_structure_flags(on_subs);
  CHECK_FALSE(dec0);
  CHECK(nor0);
  // flag-level Lie structure is decreasing and normal
  ComponentStructure on_flags = component_structure(p, 1);
  auto [dec1, nor1] = check_structure_flags(on_flags);
  CHECK(dec1);
  CHECK(nor1);
  // discrete structure: decreasing and normal
  ComponentStructure disc = component_structure(p, 1, StructureKind::Discrete);
  auto [dec2, nor2] = check_structure_flags(disc);
  CHECK(dec2);
  CHECK(nor2);
  // the SU3 flag structure is decreasing and normal as well
  ComponentStructure su = component_structure(su3_sample_poset(), 2);
  auto [dec3, nor3] = check_structure_flags(su);
  CHECK(dec3);
  CHECK(nor3);
}

TEST_CASE("discrete residual orbifold") {
  SubgroupPoset p = build_poset(so3(), TruncationParams{2});
  // connected structure: all residuals trivial
  ComponentStructure conn = component_structure(p, 1, StructureKind::Connected);
  for (std::size_t i = 0; i < conn.flags.size(); ++i) CHECK(conn.residual_order(int(i)) == 1);
  ResidualCheck rc = discrete_residual(conn);
  CHECK(rc.well_defined);
  // discrete structure: residual equals the full isotropy
  ComponentStructure disc = component_structure(p, 1, StructureKind::Discrete);
  for (std::size_t i = 0; i < disc.flags.size(); ++i)
    CHECK(disc.residual_order(int(i)) == int(disc.isotropy[i].size()));
  CHECK(discrete_residual(disc).well_defined);
  // Lie structure on flags
  CHECK(discrete_residual(component_structure(p, 1)).well_defined);
}

TEST_CASE("flag isotropy is the intersection of the term stabilizers") {
  SubgroupPoset p = su3_sample_poset();
  for (auto& f : enumerate_flags(p, 2)) {
    WeylSubgroup expect;
    for (int w = 0; w < p.spec->weyl_order(); ++w) {
      bool in_all = true;
      for (int t : f.terms)
        if (p.act(w, t) != t) in_all = false;
      if (in_all) expect.push_back(w);
    }
    CHECK(flag_isotropy(p, f) == expect);
  }
}

TEST_CASE("stabilizers match the Weyl groups of Weyl groups") {
  // the toral Weyl group of W_G K equals the stabilizer of K
  SubgroupPoset p = build_poset(so3(), TruncationParams{4});
  for (std::size_t i = 0; i < p.subgroups.size(); ++i)
    CHECK(flag_isotropy(p, Flag{{int(i)}}).size() == 2);  // all subgroups characteristic
  SubgroupPoset q = su3_sample_poset();
  CHECK(flag_isotropy(q, Flag{{q.index_of(ToralSubgroup::circle2({1, 1}))}}).size() == 2);
  CHECK(flag_isotropy(q, Flag{{q.index_of(ToralSubgroup::circle2({1, 2}))}}).size() == 1);
  CHECK(flag_isotropy(q, Flag{{q.torus_index()}}).size() == 6);
}

TEST_CASE("rank-2 lists must be closed under the Weyl action") {
  std::vector<ToralSubgroup> bad = {ToralSubgroup::circle2({1, 1}),
                                    ToralSubgroup::circle2({1, 2})};
  CHECK_THROWS_AS(build_poset(su3(), bad), std::invalid_argument);
}
