#include "torcal/cells.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace torcal::cells {

using diagram::ModuleSpec;
using gralg::RingTag;
using gralg::Summand;
using gralg::SummandKind;
using lattice::GroupName;
using lattice::ToralSubgroup;

std::optional<CellSpec> parse_cell(const SubgroupPoset& poset, const std::string& s) {
  auto find_label = [&](const std::string& label) -> int {
    for (std::size_t i = 0; i < poset.subgroups.size(); ++i)
      if (poset.subgroups[i].label() == label) return int(i);
    return -1;
  };
  if (s == "sphere") return CellSpec{CellKind::Sphere, -1};
  if (s == "etoral") return CellSpec{CellKind::ToralIdempotentSphere, -1};
  auto tail = [&](const std::string& prefix) -> std::optional<int> {
    if (s.rfind(prefix, 0) != 0) return std::nullopt;
    int k = find_label(s.substr(prefix.size()));
    if (k < 0) return std::nullopt;
    return k;
  };
  if (auto k = tail("coind:T:idem:")) return CellSpec{CellKind::CoinducedT, *k};
  if (auto k = tail("coind:N:idem:")) return CellSpec{CellKind::CoinducedN, *k};
  if (auto k = tail("cell:")) return CellSpec{CellKind::Cell, *k};
  if (auto k = tail("idem:")) return CellSpec{CellKind::Idempotent, *k};
  return std::nullopt;
}

std::string cell_name(const SubgroupPoset& poset, const CellSpec& cell) {
  switch (cell.kind) {
    case CellKind::Sphere: return "sphere";
    case CellKind::ToralIdempotentSphere: return "etoral";
    case CellKind::Cell: return "cell:" + poset.subgroups[cell.subgroup].label();
    case CellKind::Idempotent: return "idem:" + poset.subgroups[cell.subgroup].label();
    case CellKind::CoinducedT:
      return "coind:T:idem:" + poset.subgroups[cell.subgroup].label();
    case CellKind::CoinducedN:
      return "coind:N:idem:" + poset.subgroups[cell.subgroup].label();
  }
  return "?";
}

std::vector<CellSpec> catalog(const SubgroupPoset& poset) {
  std::vector<CellSpec> out = {{CellKind::Sphere, -1}, {CellKind::ToralIdempotentSphere, -1}};
  for (std::size_t i = 0; i < poset.subgroups.size(); ++i) {
    out.push_back({CellKind::Cell, int(i)});
    out.push_back({CellKind::Idempotent, int(i)});
    out.push_back({CellKind::CoinducedT, int(i)});
    out.push_back({CellKind::CoinducedN, int(i)});
  }
  return out;
}

namespace {

NormalForm nf_over(RingTag tag, std::vector<Summand> sums) {
  NormalForm nf;
  nf.ring = tag;
  nf.weyl_gen_sign = (tag.rank == 1 && tag.gen_deg == -2) ? -1 : 1;
  nf.summands = std::move(sums);
  return nf;
}

bool divides(long d, long n) { return d >= 1 && n % d == 0; }

// local cohomology payload of the coefficient ring, residual sign on the socle
NormalForm divisible_payload(RingTag tag) {
  int socle = -tag.gen_deg;
  int sign = (tag.gen_deg == -2) ? -1 : 1;
  return nf_over(RingTag::poly(tag.gen_deg), {{SummandKind::Divisible, socle, 1, sign}});
}

}  // namespace

DiagramModule pi_A(const CellContext& ctx, const CellSpec& cell, Level level, Window win) {
  const SubgroupPoset& poset = *ctx.poset;
  const RingDiagram& diag = level == Level::G ? *ctx.rinv : *ctx.ra;
  GroupName g = poset.spec->name;
  if (g != GroupName::Circle && g != GroupName::O2 && g != GroupName::SO3)
    throw std::invalid_argument("pi_A: cells are supported for the rank-one groups");
  int torus = poset.torus_index();
  bool has_w = poset.spec->weyl_order() > 1;

  auto tag_at = [&](int k) { return diag.value[diag.singleton(k)]; };
  // subgroups where the Weyl group of the normalizer has positive dimension
  auto we_nontrivial = [&](int k) {
    return ctx.rinv->value[ctx.rinv->singleton(k)].gen_deg == -4;
  };

  switch (cell.kind) {
    case CellKind::Sphere:
    case CellKind::ToralIdempotentSphere: {
      // Borel cohomology of a point at every stalk: the coefficient ring
      ModuleSpec spec;
      for (std::size_t i = 0; i < poset.subgroups.size(); ++i)
        if (int(i) != torus)
          spec.stalks[int(i)] = nf_over(tag_at(int(i)), {{SummandKind::Free, 0, 1, 1}});
      spec.t_stalk = nf_over(RingTag::rationals(), {{SummandKind::Free, 0, 1, 1}});
      return assemble(diag, level, spec, win);
    }
    case CellKind::Idempotent: {
      if (cell.subgroup == torus)
        return homalg::f_K(diag, torus,
                           nf_over(RingTag::rationals(), {{SummandKind::Free, 0, 1, 1}}), win);
      return homalg::f_K(diag, cell.subgroup, divisible_payload(tag_at(cell.subgroup)), win);
    }
    case CellKind::CoinducedT: {
      int k = cell.subgroup;
      if (k == torus) {
        // the payload is the group ring of the residual in degree zero
        std::vector<Summand> sums = {{SummandKind::Free, 0, 1, 1}};
        int res = level == Level::G ? diag.residual_order[diag.singleton(torus)]
                                    : (has_w ? 2 : 1);
        if (res > 1) sums.push_back({SummandKind::Free, 0, 1, -1});
        return homalg::f_K(diag, torus, nf_over(RingTag::rationals(), sums), win);
      }
      RingTag tag = tag_at(k);
      if (!we_nontrivial(k)) {
        // induced payload over the twisted ring: one divisible tower of each
        // sign, or a single tower when the Weyl group is trivial
        std::vector<Summand> sums;
        sums.push_back({SummandKind::Divisible, 2, 1, -1});
        if (has_w) sums.push_back({SummandKind::Divisible, 2, 1, 1});
        return homalg::f_K(diag, k, nf_over(tag, sums), win);
      }
      if (level == Level::G) {
        // over the d-ring (trivial residual) the c-divisible payload splits
        // into towers with socles in degrees 2 and 4
        std::vector<Summand> sums = {{SummandKind::Divisible, 2, 1, 1},
                                     {SummandKind::Divisible, 4, 1, 1}};
        return homalg::f_K(diag, k, nf_over(tag, sums), win);
      }
      // restricted to the torus normalizer the same cell carries the
      // Euler-class twist: towers with socles in degrees 0 and 2, both twisted
      std::vector<Summand> sums = {{SummandKind::Divisible, 0, 1, -1},
                                   {SummandKind::Divisible, 2, 1, -1}};
      return homalg::f_K(diag, k, nf_over(tag, sums), win);
    }
    case CellKind::CoinducedN: {
      // F_N(G_+, E<K>_N) is the idempotent cell of the full group
      return pi_A(ctx, {CellKind::Idempotent, cell.subgroup}, level, win);
    }
    case CellKind::Cell: {
      ModuleSpec spec;
      const ToralSubgroup& L = poset.subgroups[cell.subgroup];
      if (L.dim == 1) {
        // G/T_+: two poles (O2, SO3) or a point (circle)
        if (!has_w) return pi_A(ctx, {CellKind::Sphere, -1}, level, win);
        for (std::size_t i = 0; i < poset.subgroups.size(); ++i) {
          int k = int(i);
          if (k == torus) continue;
          RingTag tag = tag_at(k);
          if (!we_nontrivial(k)) {
            spec.stalks[k] = nf_over(
                tag, {{SummandKind::Free, 0, 1, 1}, {SummandKind::Free, 0, 1, -1}});
          } else {
            // with trivial isotropy the pair of poles sweeps out a 2-sphere:
            // Borel cohomology is free on classes in degrees 0 and 2
            spec.stalks[k] =
                nf_over(tag, {{SummandKind::Free, 0, 1, 1}, {SummandKind::Free, 2, 1, 1}});
          }
        }
        spec.t_stalk = nf_over(RingTag::rationals(),
                               {{SummandKind::Free, 0, 1, 1}, {SummandKind::Free, 0, 1, -1}});
        return assemble(diag, level, spec, win);
      }
      // G/C_n_+: torsion concentrated on the divisors of n
      long n = L.n;
      for (std::size_t i = 0; i < poset.subgroups.size(); ++i) {
        int k = int(i);
        if (k == torus) continue;
        const ToralSubgroup& K = poset.subgroups[i];
        if (!divides(K.n, n)) continue;
        RingTag tag = tag_at(k);
        if (!has_w) {
          // a free circle orbit contributes a single class in degree 1
          spec.stalks[k] = nf_over(tag, {{SummandKind::Torsion, 1, 1, 1}});
        } else if (!we_nontrivial(k)) {
          // two circle components swapped by the Weyl group
          spec.stalks[k] = nf_over(
              tag, {{SummandKind::Torsion, 1, 1, 1}, {SummandKind::Torsion, 1, 1, -1}});
        } else if (level == Level::G) {
          // trivial isotropy under the full rotation group: one class in the
          // dimension of the group
          spec.stalks[k] = nf_over(tag, {{SummandKind::Torsion, 3, 1, 1}});
        } else {
          spec.stalks[k] = nf_over(tag, {{SummandKind::Torsion, 3, 2, 1}});
        }
      }
      spec.t_stalk = nf_over(RingTag::rationals(), {});
      return assemble(diag, level, spec, win);
    }
  }
  throw std::logic_error("pi_A: unhandled cell kind");
}

std::optional<CellExpr> parse_cell_expr(const SubgroupPoset& poset, const std::string& s) {
  CellExpr expr;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, '+')) {
    int shift = 0;
    std::string body = term;
    if (!body.empty() && body[0] == 'S' && body.find(':') != std::string::npos) {
      auto colon = body.find(':');
      try {
        shift = std::stoi(body.substr(1, colon - 1));
        body = body.substr(colon + 1);
      } catch (...) {
        shift = 0;
      }
    }
    auto cell = parse_cell(poset, body);
    if (!cell) return std::nullopt;
    expr.terms.emplace_back(shift, *cell);
  }
  if (expr.terms.empty()) return std::nullopt;
  return expr;
}

DiagramModule pi_A_expr(const CellContext& ctx, const CellExpr& expr, Level level, Window win) {
  std::optional<DiagramModule> acc;
  for (auto& [shift, cell] : expr.terms) {
    DiagramModule m = diagram::shift(pi_A(ctx, cell, level, win.shifted(-shift)), shift);
    if (acc)
      acc = diagram::direct_sum(*acc, m);
    else
      acc = m;
  }
  return *acc;
}

FixedPointDecomposition fixed_point_decomposition(const SubgroupPoset& poset, int L) {
  FixedPointDecomposition out;
  std::set<int> seen;
  for (int w = 0; w < poset.spec->weyl_order(); ++w) {
    int img = poset.act(w, L);
    if (seen.insert(img).second) out.pieces.push_back({w, img});
  }
  return out;
}

SuspendResult suspend_adjoint(const DiagramModule& m, const lattice::GroupSpec& spec,
                              int check_bound) {
  SuspendResult out;
  out.shift = spec.dim_g - spec.dim_t;
  out.module = diagram::shift(m, out.shift);
  out.euler_multiplication_is_iso = gralg::solomon_check(spec, check_bound);
  return out;
}

DiagramModule change_groups(const DiagramModule& m, const RingDiagram& target_diag,
                            ChangeKind which) {
  const RingDiagram& src = *m.diag;
  if (src.poset->spec->rank != target_diag.poset->spec->rank)
    throw std::invalid_argument("change_groups: unequal ranks are not supported");
  switch (which) {
    case ChangeKind::ThetaStar: {
      if (m.level != Level::G) {
        // between groups with toral identity component the values agree
        DiagramModule out = m;
        out.diag = &target_diag;
        out.level = diagram::Level::N;
        return out;
      }
      return diagram::theta_star(m, target_diag);
    }
    case ChangeKind::ThetaUpperStar:
    case ChangeKind::ThetaShriek: {
      // coinduction; the adjoint suspension twist vanishes in equal rank
      if (m.level == Level::N) return diagram::psi(m, target_diag);
      DiagramModule out = m;
      out.diag = &target_diag;
      return out;
    }
  }
  throw std::logic_error("change_groups: unhandled kind");
}

std::vector<int> support(const DiagramModule& m) {
  std::vector<int> out;
  const SubgroupPoset& poset = *m.diag->poset;
  for (std::size_t i = 0; i < poset.subgroups.size(); ++i) {
    const auto& v = m.at_subgroup(int(i));
    Window w = v.valid.intersect(m.win.padded(-4));
    for (int t = w.lo; t <= w.hi; ++t)
      if (v.dim(t) > 0) {
        out.push_back(int(i));
        break;
      }
  }
  return out;
}

}  // namespace torcal::cells
