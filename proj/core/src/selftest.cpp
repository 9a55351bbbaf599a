#include "torcal/selftest.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace torcal::selftest {

using namespace torcal::gralg;
using namespace torcal::diagram;
using namespace torcal::cells;
using lattice::GroupName;
using lattice::GroupSpec;
using lattice::SubgroupPoset;
using lattice::ToralSubgroup;
using lattice::TruncationParams;

void parallel_for(int jobs, int n, const std::function<void(int)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

namespace {

struct Setup {
  SubgroupPoset poset;
  RingDiagram ra, rinv;
  CellContext ctx;
  Setup(GroupName g, long n)
      : poset(lattice::build_poset(GroupSpec::get(g), TruncationParams{n})),
        ra(build_Ra(poset, 1)),
        rinv(build_Rinv(poset, 1)) {
    ctx = {&poset, &ra, &rinv};
  }
};

std::string fraction(int ok, int total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

CriterionResult borel_invariants() {
  CriterionResult r{1, "borel-invariants", false, ""};
  InvariantRing inv1 = invariants(RingAction::sign_rank1(), 40);
  bool a = inv1.matches_molien && inv1.hilbert == graded_free_series({4}, 40) &&
           inv1.generator_codegrees == std::vector<int>{4};
  RingAction su3 = RingAction::from_group(GroupSpec::get(GroupName::SU3));
  InvariantRing inv2 = invariants(su3, 30);
  bool b = inv2.matches_molien && inv2.hilbert == graded_free_series({4, 6}, 30) &&
           inv2.generator_codegrees == std::vector<int>{4, 6};
  r.pass = a && b;
  r.detail = std::string("order-2 case ") + (a ? "exact" : "FAILED") + ", Weyl(SU3) case " +
             (b ? "exact" : "FAILED");
  return r;
}

CriterionResult so3_ring_tables() {
  CriterionResult r{2, "so3-ring-tables", false, ""};
  Setup s(GroupName::SO3, 1);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  int t = s.poset.torus_index();
  lattice::Flag fl{{t, c1}};
  bool tags = s.ra.value[s.ra.singleton(c1)] == RingTag::poly(-2) &&
              s.ra.value[s.ra.singleton(t)] == RingTag::rationals() &&
              s.ra.value[s.ra.flag_index(fl)] == RingTag::laurent_ring(-2) &&
              s.rinv.value[s.rinv.singleton(c1)] == RingTag::poly(-4) &&
              s.rinv.value[s.rinv.singleton(t)] == RingTag::rationals() &&
              s.rinv.value[s.rinv.flag_index(fl)] == RingTag::laurent_ring(-2);
  // degreewise on [-20, 0]: ring values realized as free rank-one modules
  Window win{-20, 2};
  bool dims = true;
  auto free_dims = [&](RingTag tag) {
    NormalForm nf;
    nf.ring = tag;
    nf.summands = {{tag.laurent ? SummandKind::Laurent : SummandKind::Free, 0, 1, 1}};
    return realize(nf, win);
  };
  WModule ra_c1 = free_dims(RingTag::poly(-2));
  WModule rinv_c1 = free_dims(RingTag::poly(-4));
  for (int deg = -20; deg <= 0; ++deg) {
    dims = dims && (ra_c1.dim(deg) == (deg % 2 == 0 ? 1 : 0));
    dims = dims && (rinv_c1.dim(deg) == (deg % 4 == 0 ? 1 : 0));
  }
  // the warning scalar: the invariant value on the long flag keeps codegree 2
  WModule inv_flag = free_dims(RingTag::laurent_ring(-2));
  WModule loc_inv = free_dims(RingTag::laurent_ring(-4));
  bool warning = inv_flag.dim(2) == 1 && loc_inv.dim(2) == 0;
  r.pass = tags && dims && warning;
  r.detail = std::string(tags ? "tables match" : "table MISMATCH") +
             (warning ? "; localized invariants differ in codegree 2 as displayed"
                      : "; warning scalar FAILED");
  return r;
}

CriterionResult descent_adjunction(const Options& opt) {
  CriterionResult r{3, "descent-adjunction", false, ""};
  Setup s(GroupName::SO3, 4);
  Window win{-24, 4};
  int total = opt.quick ? 20 : 200;
  std::atomic<int> unit_ok{0}, theta_ok{0}, psi_ok{0};
  parallel_for(opt.jobs, total, [&](int i) {
    std::mt19937_64 rng(opt.seed * 1000003ULL + i);
    DiagramModule m = corpus::random_qce_module(s.rinv, Level::G, win, rng);
    if (unit_check(m, s.ra)) unit_ok++;
    DiagramModule th = theta_star(m, s.ra);
    QceReport rep = check_qce(th);
    if (rep.qce() && rep.f_continuous) theta_ok++;
    DiagramModule back = psi(th, s.rinv);
    if (check_qce(back).qce()) psi_ok++;
  });
  // G-restricted cells at the normalizer level
  int cells_ok = 0, cells_total = 0;
  for (auto& cell : catalog(s.poset)) {
    DiagramModule n = pi_A(s.ctx, cell, Level::N, {-30, 12});
    ++cells_total;
    if (check_qce(psi(n, s.rinv)).qce()) ++cells_ok;
  }
  r.pass = unit_ok == total && theta_ok == total && psi_ok == total && cells_ok == cells_total;
  r.detail = "unit " + fraction(unit_ok, total) + ", theta_* qce+Fcts " +
             fraction(theta_ok, total) + ", Psi qce " + fraction(psi_ok, total) +
             ", Psi of cell images " + fraction(cells_ok, cells_total);
  return r;
}

CriterionResult normality(const Options& opt) {
  CriterionResult r{4, "normal-modules", false, ""};
  Window win{-40, 16};
  auto make = [&](std::vector<Summand> sums, RingTag tag) {
    NormalForm nf;
    nf.ring = tag;
    nf.has_weyl = true;
    nf.weyl_gen_sign = -1;
    nf.summands = std::move(sums);
    return realize(gralg::canonicalize(nf), win);
  };
  bool ideal_not_normal =
      !is_normal_module(make({{SummandKind::Free, -2, 1, -1}}, RingTag::poly(-2))).normal;
  bool free_normal =
      is_normal_module(make({{SummandKind::Free, 0, 1, 1}}, RingTag::poly(-2))).normal;
  bool laurent_normal =
      is_normal_module(make({{SummandKind::Laurent, 0, 1, 1}}, RingTag::laurent_ring(-2))).normal;
  int total = opt.quick ? 10 : 100;
  std::atomic<int> closure_ok{0};
  parallel_for(opt.jobs, total, [&](int i) {
    std::mt19937_64 rng(opt.seed * 2000003ULL + i);
    auto inst = corpus::random_normal_closure_instance(rng, win);
    bool ok = is_normal_module(inst.sum).normal && is_normal_module(inst.kernel).normal &&
              is_normal_module(inst.cokernel).normal && is_normal_module(inst.extension).normal;
    if (ok) closure_ok++;
  });
  r.pass = ideal_not_normal && free_normal && laurent_normal && closure_ok == total;
  r.detail = std::string("(c) ") + (ideal_not_normal ? "not normal" : "WRONG") + ", Q[c] " +
             (free_normal ? "normal" : "WRONG") + ", Q[c,c^-1] " +
             (laurent_normal ? "normal" : "WRONG") + ", closure " + fraction(closure_ok, total);
  return r;
}

CriterionResult solomon_suspension() {
  CriterionResult r{5, "solomon-adjoint-suspension", false, ""};
  bool so3 = solomon_check(GroupSpec::get(GroupName::SO3), 20);
  bool su3 = solomon_check(GroupSpec::get(GroupName::SU3), 20);
  Setup s(GroupName::SO3, 2);
  Window win{-20, 8};
  auto sphere = pi_A(s.ctx, {CellKind::Sphere, -1}, Level::G, win);
  SuspendResult sus = suspend_adjoint(sphere, *s.poset.spec);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  bool shifted = sus.shift == 2 && sus.module.at_subgroup(c1).dim(2) == 1 &&
                 sus.module.at_subgroup(c1).dim(0) == 0;
  r.pass = so3 && su3 && sus.euler_multiplication_is_iso && shifted;
  r.detail = std::string("skew invariants divisible up to codegree 20: SO3 ") +
             (so3 ? "yes" : "NO") + ", SU3 " + (su3 ? "yes" : "NO") +
             (shifted ? "; suspension shifts by 2" : "; suspension FAILED");
  return r;
}

CriterionResult injective_dimension(const Options& opt) {
  CriterionResult r{6, "injective-dimension", false, ""};
  Setup s(GroupName::SO3, 8);
  Window win{-36, 12};
  int total = opt.quick ? 10 : 100;
  std::atomic<int> ok{0}, saw_length_one{0};
  parallel_for(opt.jobs, total, [&](int i) {
    std::mt19937_64 rng(opt.seed * 3000017ULL + i);
    DiagramModule m = corpus::random_qce_module(s.rinv, Level::G, win, rng);
    homalg::Resolution res = homalg::injective_resolution(m, 2, false);
    if (res.terminated && res.exact && res.length <= 1) ok++;
    if (res.length == 1) saw_length_one++;
  });
  // the free cell needs exactly one step
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  DiagramModule free_cell = pi_A(s.ctx, {CellKind::Cell, c1}, Level::G, win);
  homalg::Resolution res = homalg::injective_resolution(free_cell, 2, false);
  bool free_len = res.terminated && res.exact && res.length == 1;
  r.pass = ok == total && free_len;
  r.detail = "resolutions exact with length <= 1: " + fraction(ok, total) +
             ", length exactly 1 seen " + std::to_string(saw_length_one + (free_len ? 1 : 0)) +
             " times (free cell included)";
  return r;
}

CriterionResult adams_sphere(const Options& opt) {
  CriterionResult r{7, "adams-sphere", false, ""};
  Window tw{-16, 8};
  auto page_at = [&](long n) {
    Setup s(GroupName::SO3, n);
    auto x = *parse_cell_expr(s.poset, "sphere");
    return adams::e2_page(s.ctx, x, x, tw, {-40, 16});
  };
  adams::E2Page p8 = page_at(8);
  bool total_one = p8.totals.count(0) && p8.totals[0] == 1;
  bool rows01 = true;
  for (auto& [st, dim] : p8.table.entries) rows01 = rows01 && st.first <= 1 && st.first >= 0;
  adams::E2Page p12 = page_at(opt.quick ? 10 : 12);
  bool stable0 = p12.totals.count(0) && p12.totals[0] == 1;
  bool row0_stable = true;
  for (int t = tw.lo; t <= tw.hi; ++t)
    row0_stable = row0_stable && p8.table.dim(0, t) == p12.table.dim(0, t);
  r.pass = total_one && rows01 && stable0 && row0_stable;
  std::ostringstream os;
  os << "total at t-s=0 is " << (p8.totals.count(0) ? p8.totals[0] : 0)
     << ", rows within {0,1}: " << (rows01 ? "yes" : "NO")
     << ", s=0 row and unit total stable under deeper truncation: "
     << ((stable0 && row0_stable) ? "yes" : "NO");
  r.detail = os.str();
  return r;
}

CriterionResult functor_squares() {
  CriterionResult r{8, "functor-squares", false, ""};
  int ok = 0, total = 0;
  for (auto g : {GroupName::SO3, GroupName::O2}) {
    Setup s(g, 2);
    Window win{-30, 12};
    for (auto& cell : catalog(s.poset)) {
      DiagramModule mg = pi_A(s.ctx, cell, Level::G, win);
      DiagramModule mn = pi_A(s.ctx, cell, Level::N, win);
      ++total;
      if (modules_isomorphic(theta_star(mg, s.ra), mn)) ++ok;
      // coinduction square for the idempotent and coinduced cells
      if (cell.kind == CellKind::Idempotent || cell.kind == CellKind::CoinducedT) {
        CellSpec coind = cell.kind == CellKind::Idempotent
                             ? CellSpec{CellKind::CoinducedN, cell.subgroup}
                             : cell;
        ++total;
        if (modules_isomorphic(pi_A(s.ctx, coind, Level::G, win), psi(mn, s.rinv))) ++ok;
      }
    }
  }
  r.pass = ok == total;
  r.detail = "restriction and coinduction squares " + fraction(ok, total);
  return r;
}

CriterionResult counit_control() {
  CriterionResult r{9, "counit-negative-control", false, ""};
  Setup s(GroupName::SO3, 1);
  int c1 = s.poset.index_of(ToralSubgroup::cyclic(1));
  Window win{-24, 8};
  auto with_stalk = [&](int sign, int shift) {
    ModuleSpec spec;
    NormalForm nf;
    nf.ring = RingTag::poly(-2);
    nf.summands = {{SummandKind::Torsion, shift, 2, sign}};
    spec.stalks[c1] = nf;
    NormalForm t;
    t.ring = RingTag::rationals();
    spec.t_stalk = t;
    return assemble(s.ra, Level::N, spec, win);
  };
  bool sym_pass = counit_check(with_stalk(1, 0));
  bool asym_fail = !counit_check(with_stalk(-1, 2));
  r.pass = sym_pass && asym_fail;
  r.detail = std::string("symmetric partner ") + (sym_pass ? "passes" : "FAILS") +
             ", asymmetric dual " + (asym_fail ? "fails as required" : "WRONGLY PASSES");
  return r;
}

CriterionResult transport_laws() {
  CriterionResult r{10, "transport-orbifold-laws", false, ""};
  Setup s(GroupName::SO3, 2);
  lattice::TransportCategory cat = lattice::build_transport_category(s.poset, 1);
  bool assoc = true, ident = true;
  for (auto& a : cat.morphisms) {
    // identities compose trivially
    lattice::TransportMorphism id_src{a.source, a.source, 0, a.source};
    lattice::TransportMorphism c = lattice::transport_compose(s.poset, id_src, a);
    ident = ident && c.w == a.w && c.incl_target == a.incl_target;
  }
  int triples = 0;
  for (auto& a : cat.morphisms)
    for (auto& b : cat.morphisms) {
      if (!(a.target == b.source)) continue;
      auto ab = lattice::transport_compose(s.poset, a, b);
      for (auto& c : cat.morphisms) {
        if (!(b.target == c.source)) continue;
        auto left = lattice::transport_compose(s.poset, ab, c);
        auto right = lattice::transport_compose(s.poset, a, lattice::transport_compose(s.poset, b, c));
        assoc = assoc && left.w == right.w && left.incl_target == right.incl_target &&
                left.source == right.source;
        ++triples;
      }
    }
  auto on_subgroups =
      lattice::component_structure(s.poset, 0, lattice::StructureKind::Lie, false);
  auto on_flags = lattice::component_structure(s.poset, 1);
  auto [dec0, nor0] = lattice::check_structure_flags(on_subgroups);
  auto [dec1, nor1] = lattice::check_structure_flags(on_flags);
  bool verdicts = !dec0 && dec1 && nor1;
  bool residual = lattice::discrete_residual(on_flags).well_defined;
  r.pass = assoc && ident && triples > 0 && verdicts && residual;
  std::ostringstream os;
  os << "associativity on " << triples << " triples, identities hold; "
     << "subgroup-level structure decreasing: " << (dec0 ? "yes (WRONG)" : "no")
     << ", flag-level decreasing and normal: " << ((dec1 && nor1) ? "yes" : "NO")
     << ", discrete residual well defined: " << (residual ? "yes" : "NO");
  r.detail = os.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options& opt) {
  std::vector<CriterionResult> out;
  out.push_back(borel_invariants());
  out.push_back(so3_ring_tables());
  out.push_back(descent_adjunction(opt));
  out.push_back(normality(opt));
  out.push_back(solomon_suspension());
  out.push_back(injective_dimension(opt));
  out.push_back(adams_sphere(opt));
  out.push_back(functor_squares());
  out.push_back(counit_control());
  out.push_back(transport_laws());
  return out;
}

std::string report_text(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (auto& r : results)
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << " " << r.name << ": " << r.detail << "\n";
  int passed = 0;
  for (auto& r : results) passed += r.pass ? 1 : 0;
  os << (passed == int(results.size()) ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
     << passed << "/" << results.size() << ")\n";
  return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace torcal::selftest
