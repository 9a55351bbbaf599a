#include "torcal/cells.hpp"
#include "torcal/corpus.hpp"
#include "torcal/homalg.hpp"

#include "doctest.h"

using namespace torcal;
using namespace torcal::homalg;
using namespace torcal::gralg;
using diagram::build_Ra;
using diagram::build_Rinv;
using diagram::check_qce;
using diagram::DiagramModule;
using diagram::Level;
using diagram::ModuleSpec;
using diagram::RingDiagram;
using lattice::GroupName;
using lattice::GroupSpec;
using lattice::SubgroupPoset;
using lattice::ToralSubgroup;
using lattice::TruncationParams;

namespace {

struct Setup {
  SubgroupPoset poset;
  RingDiagram rinv;
  Setup(GroupName g, long n)
      : poset(lattice::build_poset(GroupSpec::get(g), TruncationParams{n})),
        rinv(build_Rinv(poset, 1)) {}
};

ModuleSpec sphere_spec(const Setup& s) {
  ModuleSpec spec;
  for (std::size_t i = 0; i < s.poset.subgroups.size(); ++i) {
    if (s.poset.subgroups[i].dim == 1) continue;
    NormalForm nf;
    nf.ring = s.rinv.value[s.rinv.singleton(int(i))];
    nf.summands = {{SummandKind::Free, 0, 1, 1}};
    spec.stalks[int(i)] = nf;
  }
  NormalForm t;
  t.ring = RingTag::rationals();
  t.summands = {{SummandKind::Free, 0, 1, 1}};
  spec.t_stalk = t;
  return spec;
}

}  // namespace

TEST_CASE("the cofree module at the torus") {
  Setup s(GroupName::SO3, 2);
  NormalForm pay;
  pay.ring = RingTag::rationals();
  pay.summands = {{SummandKind::Free, 0, 1, 1}};
  DiagramModule f = f_K(s.rinv, s.poset.torus_index(), pay, {-24, 8});
  // value at C1 is the d-Laurent ring: dims 1 in degrees = 0 mod 4
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  CHECK(f.at_subgroup(c1).dim(0) == 1);
  CHECK(f.at_subgroup(c1).dim(-2) == 0);
  CHECK(f.at_subgroup(c1).dim(-4) == 1);
  CHECK(f.at_subgroup(c1).dim(4) == 1);
  // at C2 the full c-Laurent ring
  int c2 = s.poset.index_of(ToralSubgroup::cyclic(2));
  CHECK(f.at_subgroup(c2).dim(-2) == 1);
  CHECK(f.at_subgroup(c2).dim(0) == 1);
  CHECK(check_qce(f).qce());
}

TEST_CASE("torsion payloads give modules concentrated at one subgroup") {
  Setup s(GroupName::SO3, 2);
  int c2 = s.poset.index_of(ToralSubgroup::cyclic(2));
  NormalForm pay;
  pay.ring = RingTag::poly(-2);
  pay.summands = {{SummandKind::Divisible, 2, 1, -1}};
  DiagramModule f = f_K(s.rinv, c2, pay, {-24, 8});
  CHECK(f.at_subgroup(c2).dim(2) == 1);
  CHECK(f.at_subgroup(c2).dim(4) == 1);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  CHECK(f.at_subgroup(c1).dim(0) == 0);
  CHECK(check_qce(f).qce());
  // free payloads are rejected
  NormalForm bad;
  bad.ring = RingTag::poly(-2);
  bad.summands = {{SummandKind::Free, 0, 1, 1}};
  CHECK_THROWS_AS(f_K(s.rinv, c2, bad, Window{-24, 8}), std::invalid_argument);
}

TEST_CASE("injective input has a length-zero resolution") {
  Setup s(GroupName::SO3, 2);
  int c2 = s.poset.index_of(ToralSubgroup::cyclic(2));
  NormalForm pay;
  pay.ring = RingTag::poly(-2);
  pay.summands = {{SummandKind::Divisible, 2, 1, -1}};
  DiagramModule f = f_K(s.rinv, c2, pay, {-40, 16});
  Resolution res = injective_resolution(f, 3);
  CHECK(res.terminated);
  CHECK(res.length == 0);
  CHECK(res.exact);
}

TEST_CASE("the sphere resolves in one step") {
  Setup s(GroupName::SO3, 3);
  DiagramModule m = assemble(s.rinv, Level::G, sphere_spec(s), {-40, 16});
  Embedding e = embed_in_injectives(m);
  CHECK(e.mono);
  Resolution res = injective_resolution(m, 3);
  CHECK(res.terminated);
  CHECK(res.length == 1);
  CHECK(res.exact);
}

TEST_CASE("a free cell needs exactly one step") {
  // the free-orbit module: a single Q in degree 1 at the trivial subgroup
  Setup s(GroupName::Circle, 2);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  ModuleSpec spec;
  NormalForm nf;
  nf.ring = RingTag::poly(-2);
  nf.summands = {{SummandKind::Torsion, 1, 1, 1}};
  spec.stalks[c1] = nf;
  NormalForm t;
  t.ring = RingTag::rationals();
  spec.t_stalk = t;
  DiagramModule m = assemble(s.rinv, Level::G, spec, {-40, 16});
  Resolution res = injective_resolution(m, 3);
  CHECK(res.terminated);
  CHECK(res.length == 1);
  CHECK(res.exact);
}

TEST_CASE("hom into injectives: closed form vs the naive diagram hom") {
  Setup s(GroupName::SO3, 2);
  DiagramModule m = assemble(s.rinv, Level::G, sphere_spec(s), {-20, 10});
  int c2 = s.poset.index_of(ToralSubgroup::cyclic(2));
  NormalForm pay;
  pay.ring = RingTag::poly(-2);
  pay.summands = {{SummandKind::Divisible, 2, 1, -1}};
  InjectiveTerm term = make_injective(s.rinv, {{c2, pay}}, m.win);
  std::vector<int> degs = {6, 4, 2, 0, -2, -4};
  auto closed = hom_into_injective_dims(m, term, degs);
  auto naive = naive_hom_dims(m, term.module, degs);
  CHECK(closed == naive);

  NormalForm tpay;
  tpay.ring = RingTag::rationals();
  tpay.summands = {{SummandKind::Free, 0, 1, 1}};
  InjectiveTerm tterm = make_injective(s.rinv, {{s.poset.torus_index(), tpay}}, m.win);
  auto closed_t = hom_into_injective_dims(m, tterm, degs);
  auto naive_t = naive_hom_dims(m, tterm.module, degs);
  CHECK(closed_t == naive_t);
  // the identity is the only endomorphism in degree 0
  CHECK(closed_t[3] == 1);
}

TEST_CASE("endomorphisms of a divisible stalk form a power series ring") {
  Setup s(GroupName::Circle, 1);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  NormalForm pay;
  pay.ring = RingTag::poly(-2);
  pay.summands = {{SummandKind::Divisible, 2, 1, 1}};
  DiagramModule f = f_K(s.rinv, c1, pay, {-30, 30});
  InjectiveTerm term = make_injective(s.rinv, {{c1, pay}}, f.win);
  std::vector<int> degs = {4, 2, 0, -2, -4, -6};
  auto dims = hom_into_injective_dims(f, term, degs);
  CHECK(dims == std::vector<int>{0, 0, 1, 1, 1, 1});
}

TEST_CASE("ext of the sphere with itself") {
  Setup s(GroupName::SO3, 2);
  DiagramModule m = assemble(s.rinv, Level::G, sphere_spec(s), {-40, 16});
  ExtTable table = ext(m, m, {-8, 8});
  // concentrated on the rows s = 0, 1
  for (auto& [st, dim] : table.entries) CHECK(st.first <= 1);
  CHECK(table.dim(0, 0) == 1);
  CHECK(table.dim(1, 0) == 0);
  auto tot = table.totals();
  CHECK(tot[0] == 1);
  // the s=1 row carries the divisible contributions in degrees = 0 mod 4
  CHECK(table.dim(1, 4) > 0);
  CHECK(table.dim(0, 4) == 0);
}

TEST_CASE("ext vanishes when supports are disjoint") {
  Setup s(GroupName::SO3, 2);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  int c2 = s.poset.index_of(ToralSubgroup::cyclic(2));
  auto one_point = [&](int k, int shift) {
    ModuleSpec spec;
    NormalForm nf;
    nf.ring = s.rinv.value[s.rinv.singleton(k)];
    nf.summands = {{SummandKind::Torsion, shift, 1, 1}};
    spec.stalks[k] = nf;
    NormalForm t;
    t.ring = RingTag::rationals();
    spec.t_stalk = t;
    return assemble(s.rinv, Level::G, spec, {-40, 16});
  };
  DiagramModule a = one_point(c1, 0);
  DiagramModule b = one_point(c2, 0);
  ExtTable table = ext(a, b, {-6, 6});
  CHECK(table.entries.empty());
}

TEST_CASE("universal property of f_K on a random corpus") {
  Setup s(GroupName::SO3, 2);
  Window win{-18, 8};
  std::mt19937_64 rng(515131);
  std::vector<int> degs = {4, 2, 0, -2};
  std::uniform_int_distribution<int> pick(0, int(s.poset.subgroups.size()) - 1);
  std::uniform_int_distribution<int> sh(-4, 2), bit(0, 1);
  int agree = 0, total = 0;
  for (int rep = 0; rep < 50; ++rep) {
    torcal::corpus::RandomModuleParams params;
    params.max_pattern = 1;
    params.max_torsion = 1;
    auto m = torcal::corpus::random_qce_module(s.rinv, Level::G, win, rng, params);
    int k = pick(rng);
    NormalForm pay;
    int si = s.rinv.singleton(k);
    pay.ring = s.rinv.value[si];
    if (k == s.poset.torus_index())
      pay.summands = {{SummandKind::Free, sh(rng), 1, bit(rng) ? 1 : -1}};
    else
      pay.summands = {{SummandKind::Divisible, sh(rng) - pay.ring.gen_deg, 1,
                       bit(rng) ? 1 : -1}};
    InjectiveTerm term = make_injective(s.rinv, {{k, pay}}, win);
    ++total;
    if (hom_into_injective_dims(m, term, degs) == naive_hom_dims(m, term.module, degs)) ++agree;
  }
  CHECK(agree == total);
}

TEST_CASE("psi carries normalizer-level injectives to injectives") {
  Setup s(GroupName::SO3, 2);
  auto ra = build_Ra(s.poset, 1);
  Window win{-36, 12};
  for (std::size_t i = 0; i < s.poset.subgroups.size(); ++i) {
    NormalForm pay;
    int si = ra.singleton(int(i));
    pay.ring = ra.value[si];
    if (int(i) == s.poset.torus_index())
      pay.summands = {{SummandKind::Free, 0, 1, 1}};
    else
      pay.summands = {{SummandKind::Divisible, 2, 1, -1}};
    auto i_n = f_K(ra, int(i), pay, win);
    auto img = diagram::psi(i_n, s.rinv);
    Resolution res = injective_resolution(img, 2, false);
    INFO("orbit " << s.poset.subgroups[i].label());
    CHECK(res.terminated);
    CHECK(res.length == 0);
  }
}

TEST_CASE("ext tables stable under enlarging the truncation") {
  auto table_at = [&](long n) {
    Setup s(GroupName::SO3, n);
    Window win{-30, 12};
    int c2 = s.poset.index_of(ToralSubgroup::cyclic(2));
    auto ctx = cells::CellContext{&s.poset, nullptr, &s.rinv};
    auto ra = build_Ra(s.poset, 1);
    ctx.ra = &ra;
    auto x = cells::pi_A(ctx, {cells::CellKind::Cell, c2}, Level::G, win);
    auto y = cells::pi_A(ctx, {cells::CellKind::Idempotent, c2}, Level::G, win);
    return ext(x, y, {-6, 6});
  };
  ExtTable t8 = table_at(8);
  ExtTable t12 = table_at(12);
  CHECK(t8.entries == t12.entries);
}
