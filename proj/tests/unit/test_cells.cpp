#include "torcal/cells.hpp"

#include "doctest.h"

using namespace torcal;
using namespace torcal::cells;
using namespace torcal::gralg;
using diagram::build_Ra;
using diagram::build_Rinv;
using diagram::check_F_continuity;
using diagram::check_qce;
using diagram::counit_check;
using diagram::Level;
using diagram::modules_isomorphic;
using diagram::psi;
using diagram::theta_star;
using lattice::GroupName;
using lattice::GroupSpec;
using lattice::SubgroupPoset;
using lattice::ToralSubgroup;
using lattice::TruncationParams;

namespace {

struct Ctx {
  SubgroupPoset poset;
  diagram::RingDiagram ra, rinv;
  CellContext ctx;
  Ctx(GroupName g, long n)
      : poset(lattice::build_poset(GroupSpec::get(g), TruncationParams{n})),
        ra(build_Ra(poset, 1)),
        rinv(build_Rinv(poset, 1)) {
    ctx = {&poset, &ra, &rinv};
  }
};

}  // namespace

TEST_CASE("sphere stalks are the coefficient rings") {
  Ctx c(GroupName::Circle, 4);
  Window win{-24, 8};
  auto m = pi_A(c.ctx, {CellKind::Sphere, -1}, Level::G, win);
  for (std::size_t i = 0; i < c.poset.subgroups.size(); ++i) {
    const auto& v = m.at_subgroup(int(i));
    if (c.poset.subgroups[i].dim == 1) {
      CHECK(v.dim(0) == 1);
      CHECK(v.dim(-2) == 0);
    } else {
      CHECK(v.dim(0) == 1);
      CHECK(v.dim(-2) == 1);
      CHECK(v.dim(2) == 0);
    }
  }
  CHECK(check_qce(m).qce());
  CHECK(check_F_continuity(m).f_continuous);
}

TEST_CASE("every catalog cell is qce, F-continuous, and G-realizable") {
  for (auto g : {GroupName::Circle, GroupName::O2, GroupName::SO3}) {
    Ctx c(g, 2);
    Window win{-30, 12};
    for (auto& cell : catalog(c.poset)) {
      INFO(lattice::group_name_str(g) << " " << cell_name(c.poset, cell));
      auto mg = pi_A(c.ctx, cell, Level::G, win);
      auto rep = check_qce(mg);
      CHECK(rep.qce());
      CHECK(rep.f_continuous);
      auto mn = pi_A(c.ctx, cell, Level::N, win);
      CHECK(check_qce(mn).qce());
      CHECK(counit_check(mn));
    }
  }
}

TEST_CASE("restriction square: theta_star of the full-group image") {
  for (auto g : {GroupName::O2, GroupName::SO3}) {
    Ctx c(g, 2);
    Window win{-30, 12};
    for (auto& cell : catalog(c.poset)) {
      INFO(lattice::group_name_str(g) << " " << cell_name(c.poset, cell));
      auto mg = pi_A(c.ctx, cell, Level::G, win);
      auto mn = pi_A(c.ctx, cell, Level::N, win);
      auto restricted = theta_star(mg, c.ra);
      int wit = -1;
      CHECK(modules_isomorphic(restricted, mn, &wit));
      INFO("witness flag " << wit);
    }
  }
}

TEST_CASE("coinduction square: the full-group image of a coinduced cell") {
  Ctx c(GroupName::SO3, 2);
  Window win{-30, 12};
  for (auto& cell : catalog(c.poset)) {
    if (cell.kind != CellKind::Idempotent && cell.kind != CellKind::CoinducedT) continue;
    CellSpec coind = cell.kind == CellKind::Idempotent
                         ? CellSpec{CellKind::CoinducedN, cell.subgroup}
                         : cell;
    INFO(cell_name(c.poset, coind));
    auto lhs = pi_A(c.ctx, coind, Level::G, win);
    auto rhs = psi(pi_A(c.ctx, cell, Level::N, win), c.rinv);
    CHECK(modules_isomorphic(lhs, rhs));
  }
}

TEST_CASE("fixed points of induced spaces") {
  Ctx c(GroupName::SO3, 3);
  // every subgroup of the circle is characteristic: single pieces
  for (std::size_t i = 0; i < c.poset.subgroups.size(); ++i)
    CHECK(fixed_point_decomposition(c.poset, int(i)).pieces.size() == 1);
  // a two-element orbit in the rank-2 sample
  std::vector<ToralSubgroup> list = {
      ToralSubgroup::circle2({1, 1}), ToralSubgroup::circle2({2, -1}),
      ToralSubgroup::circle2({1, -2}), ToralSubgroup::finite2(1, {{1, 0}, {0, 1}})};
  SubgroupPoset q = lattice::build_poset(GroupSpec::get(GroupName::SU3), list);
  int s = q.index_of(ToralSubgroup::circle2({1, 1}));
  CHECK(fixed_point_decomposition(q, s).pieces.size() == 3);
  int triv = q.index_of(ToralSubgroup::finite2(1, {{1, 0}, {0, 1}}));
  CHECK(fixed_point_decomposition(q, triv).pieces.size() == 1);
}

TEST_CASE("adjoint suspension") {
  Ctx c(GroupName::SO3, 2);
  Window win{-24, 8};
  auto m = pi_A(c.ctx, {CellKind::Sphere, -1}, Level::G, win);
  SuspendResult s = suspend_adjoint(m, *c.poset.spec);
  CHECK(s.shift == 2);
  CHECK(s.euler_multiplication_is_iso);
  int c1 = c.poset.index_of(ToralSubgroup::cyclic(1));
  CHECK(s.module.at_subgroup(c1).dim(2) == 1);
  CHECK(s.module.at_subgroup(c1).dim(0) == 0);

  Ctx cc(GroupName::Circle, 1);
  auto mc = pi_A(cc.ctx, {CellKind::Sphere, -1}, Level::G, win);
  SuspendResult sc = suspend_adjoint(mc, *cc.poset.spec);
  CHECK(sc.shift == 0);
  CHECK(sc.euler_multiplication_is_iso);
}

TEST_CASE("equal-rank change of groups") {
  Ctx c(GroupName::SO3, 2);
  Window win{-30, 12};
  auto mg = pi_A(c.ctx, {CellKind::Sphere, -1}, Level::G, win);
  // restriction to the normalizer equals the direct computation
  auto restricted = change_groups(mg, c.ra, ChangeKind::ThetaStar);
  auto direct = pi_A(c.ctx, {CellKind::Sphere, -1}, Level::N, win);
  CHECK(modules_isomorphic(restricted, direct));
  // coinduction back: theta-upper-star of a restricted module recovers it
  auto back = change_groups(restricted, c.rinv, ChangeKind::ThetaUpperStar);
  CHECK(modules_isomorphic(back, mg));
  auto shriek = change_groups(restricted, c.rinv, ChangeKind::ThetaShriek);
  CHECK(modules_isomorphic(shriek, mg));
}

TEST_CASE("support of idempotent products is the intersection of supports") {
  Ctx c(GroupName::SO3, 3);
  Window win{-24, 8};
  int c2 = c.poset.index_of(ToralSubgroup::cyclic(2));
  int c3 = c.poset.index_of(ToralSubgroup::cyclic(3));
  auto e2 = pi_A(c.ctx, {CellKind::Idempotent, c2}, Level::G, win);
  auto e3 = pi_A(c.ctx, {CellKind::Idempotent, c3}, Level::G, win);
  auto s2 = support(e2);
  auto s3 = support(e3);
  CHECK(s2 == std::vector<int>{c2});
  CHECK(s3 == std::vector<int>{c3});
  // the smash of distinct idempotent classes has empty geometric isotropy:
  // the degreewise product of the stalks vanishes
  std::vector<int> inter;
  std::set_intersection(s2.begin(), s2.end(), s3.begin(), s3.end(), std::back_inserter(inter));
  CHECK(inter.empty());
}

TEST_CASE("cell expressions: sums and shifts") {
  Ctx c(GroupName::SO3, 2);
  auto expr = parse_cell_expr(c.poset, "S2:sphere+idem:C2");
  REQUIRE(expr.has_value());
  CHECK(expr->terms.size() == 2);
  CHECK(expr->terms[0].first == 2);
  Window win{-20, 10};
  auto m = pi_A_expr(c.ctx, *expr, Level::G, win);
  int c1 = c.poset.index_of(ToralSubgroup::cyclic(1));
  CHECK(m.at_subgroup(c1).dim(2) == 1);  // shifted sphere
}

TEST_CASE("circle orbit cells: one class in degree one at each divisor") {
  Ctx c(GroupName::Circle, 6);
  Window win{-20, 8};
  int c6 = c.poset.index_of(ToralSubgroup::cyclic(6));
  auto m = pi_A(c.ctx, {CellKind::Cell, c6}, Level::G, win);
  for (long d = 1; d <= 6; ++d) {
    int k = c.poset.index_of(ToralSubgroup::cyclic(d));
    const auto& v = m.at_subgroup(k);
    bool divides = 6 % d == 0;
    CHECK(v.dim(1) == (divides ? 1 : 0));
    CHECK(v.dim(0) == 0);
    CHECK(v.dim(-1) == 0);
  }
  CHECK(torcal::homalg::injective_resolution(m, 2).length == 1);
}
