#include "torcal/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace torcal::diagram {

using gralg::FixedPoints;
using gralg::MapPin;
using gralg::ScalarExtension;
using gralg::SolvedMap;
using gralg::Summand;
using gralg::SummandKind;

std::string flag_label(const SubgroupPoset& poset, const Flag& f) {
  std::string s;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (i) s += ">";
    s += poset.subgroups[f.terms[i]].label();
  }
  return s;
}

int RingDiagram::flag_index(const Flag& f) const {
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i] == f) return int(i);
  return -1;
}

int RingDiagram::singleton(int subgroup) const { return flag_index(Flag{{subgroup}}); }

namespace {

RingTag ra_tag(const SubgroupPoset& poset, const Flag& f) {
  if (f.length() == 0) {
    const auto& k = poset.subgroups[f.top()];
    return k.dim == poset.spec->rank ? RingTag::rationals() : RingTag::poly(-2);
  }
  return RingTag::laurent_ring(-2);
}

RingTag invariant_tag(RingTag t, bool nontrivial_we) {
  if (!nontrivial_we) return t;
  if (t.rank == 0) return t;
  if (t.gen_deg != -2) throw std::logic_error("invariant_tag: unexpected ring");
  return t.laurent ? RingTag::laurent_ring(-4) : RingTag::poly(-4);
}

RingDiagram build_base(const SubgroupPoset& poset, int max_flag_len, Flavor flavor,
                       bool on_flag_poset) {
  if (poset.spec->rank != 1)
    throw std::invalid_argument("ring diagrams with module support require a rank-one poset");
  RingDiagram d;
  d.poset = &poset;
  d.flavor = flavor;
  d.cs = lattice::component_structure(poset, max_flag_len, lattice::StructureKind::Lie,
                                      on_flag_poset);
  if (flavor != Flavor::Ra) {
    auto [dec, nor] = lattice::check_structure_flags(d.cs);
    if (!dec)
      throw std::domain_error("invariant diagrams require a decreasing component structure");
    if (!nor) throw std::domain_error("invariant diagrams require a normal component structure");
  }
  d.flags = d.cs.flags;
  for (std::size_t i = 0; i < d.flags.size(); ++i) {
    const Flag& f = d.flags[i];
    // all flags must be fixed by the Weyl action in the rank-one lane
    for (int w = 0; w < poset.spec->weyl_order(); ++w)
      if (!(lattice::act_on_flag(poset, w, f) == f))
        throw std::logic_error("rank-one lane expects Weyl-fixed flags");
    bool we_nontrivial = d.cs.we[i].size() > 1;
    int res = d.cs.residual_order(int(i));
    RingTag tag = ra_tag(poset, f);
    if (flavor != Flavor::Ra) tag = invariant_tag(tag, we_nontrivial);
    d.value.push_back(tag);
    d.residual_order.push_back(res);
    if (flavor == Flavor::Ra)
      d.module_weyl.push_back(poset.spec->weyl_order() > 1);
    else
      d.module_weyl.push_back(res > 1);
  }
  for (std::size_t i = 0; i < d.flags.size(); ++i)
    for (std::size_t j = 0; j < d.flags.size(); ++j)
      if (i != j && lattice::subflag(d.flags[i], d.flags[j]))
        d.edges.push_back({int(i), int(j)});
  return d;
}

}  // namespace

RingDiagram build_Ra(const SubgroupPoset& poset, int max_flag_len) {
  return build_base(poset, max_flag_len, Flavor::Ra, true);
}

RingDiagram build_Rinv(const SubgroupPoset& poset, int max_flag_len, bool on_flag_poset) {
  return build_base(poset, max_flag_len, Flavor::Rinv, on_flag_poset);
}

RingDiagram build_Rtw(const SubgroupPoset& poset, int max_flag_len) {
  return build_base(poset, max_flag_len, Flavor::Rtw, true);
}

const WModule& DiagramModule::at_flag(const Flag& f) const {
  int i = diag->flag_index(f);
  if (i < 0) throw std::invalid_argument("at_flag: unknown flag");
  return values[i];
}

const WModule& DiagramModule::at_subgroup(int subgroup) const {
  return values[diag->singleton(subgroup)];
}

QMat DiagramModule::edge_map_at(int edge, int t) const {
  const auto& em = edge_maps[edge];
  const WModule& from = values[diag->edges[edge].from];
  if (!from.win.contains(t)) return QMat(values[diag->edges[edge].to].dim(t), 0);
  return em[t - from.win.lo];
}

DiagramModule zero_module(const RingDiagram& diag, Level level, Window win) {
  DiagramModule m;
  m.diag = &diag;
  m.level = level;
  m.win = win;
  for (std::size_t i = 0; i < diag.flags.size(); ++i) {
    WModule v = WModule::zero(diag.value[i], win);
    v.has_weyl = diag.module_weyl[i];
    if (v.has_weyl)
      for (int t = win.lo; t <= win.hi; ++t) v.weyl.push_back(QMat(0, 0));
    m.values.push_back(std::move(v));
  }
  for (std::size_t e = 0; e < diag.edges.size(); ++e)
    m.edge_maps.emplace_back(win.length(), QMat());
  return m;
}

DiagramModule direct_sum(const DiagramModule& a, const DiagramModule& b) {
  if (a.diag != b.diag || a.level != b.level)
    throw std::invalid_argument("direct_sum: diagram mismatch");
  DiagramModule r;
  r.diag = a.diag;
  r.level = a.level;
  r.win = a.win.intersect(b.win);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    r.values.push_back(gralg::direct_sum(a.values[i], b.values[i]));
  for (std::size_t e = 0; e < a.edge_maps.size(); ++e) {
    std::vector<QMat> maps(r.win.length());
    for (int t = r.win.lo; t <= r.win.hi; ++t) {
      QMat ma = a.edge_map_at(int(e), t);
      QMat mb = b.edge_map_at(int(e), t);
      QMat m(ma.rows() + mb.rows(), ma.cols() + mb.cols());
      for (std::size_t i2 = 0; i2 < ma.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < ma.cols(); ++j2) m(i2, j2) = ma(i2, j2);
      for (std::size_t i2 = 0; i2 < mb.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < mb.cols(); ++j2)
          m(ma.rows() + i2, ma.cols() + j2) = mb(i2, j2);
      maps[t - r.win.lo] = std::move(m);
    }
    r.edge_maps.push_back(std::move(maps));
  }
  return r;
}

DiagramModule shift(const DiagramModule& m, int k) {
  DiagramModule r = m;
  r.win = m.win.shifted(k);
  for (auto& v : r.values) v = gralg::shift(v, k);
  return r;
}

// ---------------------------------------------------------------------------
// assembly

namespace {

// per congruence class: surviving slot count and diagonal Weyl signs of a
// localized flag value (constant along the class)
struct SlotInfo {
  std::vector<int> parity_dims;
  std::vector<std::vector<Rat>> signs;
};

SlotInfo slot_info(const WModule& loc, int G) {
  SlotInfo s;
  s.parity_dims.assign(G, 0);
  s.signs.assign(G, {});
  for (int p = 0; p < G; ++p) {
    for (int t = loc.valid.hi; t >= loc.valid.lo; --t) {
      if (((t % G) + G) % G != p) continue;
      s.parity_dims[p] = loc.dim(t);
      QMat w = loc.weyl_at(t);
      // transport the sign to the canonical parity degree p
      int steps = (t - p) / G;
      Rat tw = (steps % 2 != 0) ? Rat(-1) : Rat(1);
      if (loc.weyl_gen_sign == 1) tw = 1;
      for (int j = 0; j < loc.dim(t); ++j)
        s.signs[p].push_back(loc.has_weyl ? Rat(w(j, j) * tw) : Rat(1));
      break;
    }
  }
  return s;
}

}  // namespace

DiagramModule assemble(const RingDiagram& diag, Level level, const ModuleSpec& spec, Window win) {
  const SubgroupPoset& poset = *diag.poset;
  DiagramModule m = zero_module(diag, level, win);
  int torus = poset.torus_index();

  // singleton values
  for (std::size_t i = 0; i < diag.flags.size(); ++i) {
    const Flag& f = diag.flags[i];
    if (f.length() != 0) continue;
    int k = f.top();
    NormalForm nf;
    nf.ring = diag.value[i];
    nf.has_weyl = diag.module_weyl[i];
    nf.weyl_gen_sign = (nf.ring.rank == 1 && nf.ring.gen_deg == -2) ? -1 : 1;
    if (k == torus) {
      if (spec.t_stalk) nf.summands = spec.t_stalk->summands;
    } else {
      auto it = spec.stalks.find(k);
      if (it != spec.stalks.end()) nf.summands = it->second.summands;
    }
    m.values[i] = realize(gralg::canonicalize(nf), win);
  }

  bool derive_t = !spec.t_stalk.has_value();
  NormalForm t_nf;
  t_nf.ring = diag.value[diag.singleton(torus)];
  t_nf.has_weyl = diag.module_weyl[diag.singleton(torus)];
  if (!derive_t) t_nf.summands = spec.t_stalk->summands;

  // flag values: canonical extensions of the bottom stalk
  for (std::size_t i = 0; i < diag.flags.size(); ++i) {
    const Flag& f = diag.flags[i];
    if (f.length() == 0) continue;
    auto ov = spec.flag_overrides.find(int(i));
    if (ov != spec.flag_overrides.end()) {
      NormalForm nf = ov->second;
      nf.has_weyl = diag.module_weyl[i];
      m.values[i] = realize(gralg::canonicalize(nf), win);
      continue;
    }
    const WModule& bottom = m.values[diag.singleton(f.bottom())];
    ScalarExtension ext = gralg::extend_scalars(bottom, diag.value[i], diag.module_weyl[i]);
    m.values[i] = ext.out;
    for (std::size_t e = 0; e < diag.edges.size(); ++e) {
      if (diag.edges[e].to != int(i)) continue;
      int from = diag.edges[e].from;
      if (diag.flags[from].length() == 0 && diag.flags[from].top() == f.bottom())
        for (int t = win.lo; t <= win.hi; ++t)
          m.edge_maps[e][t - win.lo] = ext.unit_at(t, bottom);
    }
  }

  if (derive_t) {
    // one torus generator per surviving slot of some nonzero localized value
    for (std::size_t i = 0; i < diag.flags.size(); ++i) {
      if (diag.flags[i].length() == 0 || spec.flag_overrides.count(int(i))) continue;
      const WModule& v = m.values[i];
      bool nonzero = false;
      for (int t = v.valid.lo; t <= v.valid.hi; ++t) nonzero = nonzero || v.dim(t) > 0;
      if (!nonzero) continue;
      SlotInfo si = slot_info(v, 2);
      for (int p = 0; p < 2; ++p)
        for (int j = 0; j < si.parity_dims[p]; ++j)
          t_nf.summands.push_back({SummandKind::Free, p, 1, si.signs[p][j] == 1 ? 1 : -1});
      break;
    }
    m.values[diag.singleton(torus)] = realize(gralg::canonicalize(t_nf), win);
  }

  // top edge maps: torus generators hit the surviving slots in order
  const WModule& tval = m.values[diag.singleton(torus)];
  NormalForm cn = gralg::canonicalize(t_nf);
  for (std::size_t e = 0; e < diag.edges.size(); ++e) {
    int from = diag.edges[e].from, to = diag.edges[e].to;
    if (diag.flags[from].length() != 0 || diag.flags[from].top() != torus) continue;
    if (diag.flags[to].length() == 0 || spec.flag_overrides.count(to)) continue;
    const WModule& v = m.values[to];
    SlotInfo si = slot_info(v, 2);
    // per parity, queues of slots by Weyl sign; generators take the next slot
    // of their transported sign
    std::vector<std::vector<int>> queue_pos(2), queue_neg(2);
    for (int p = 0; p < 2; ++p)
      for (int j = 0; j < si.parity_dims[p]; ++j)
        (si.signs[p][j] == 1 ? queue_pos : queue_neg)[p].push_back(j);
    bool match_signs = v.has_weyl && tval.has_weyl;
    std::vector<int> slot_of(cn.summands.size(), -1);
    for (std::size_t s = 0; s < cn.summands.size(); ++s) {
      int p = ((cn.summands[s].shift % 2) + 2) % 2;
      int steps = (cn.summands[s].shift - p) / 2;
      int want = (steps % 2 != 0) ? -cn.summands[s].sign : cn.summands[s].sign;
      auto& q = (!match_signs) ? (queue_pos[p].empty() ? queue_neg[p] : queue_pos[p])
                               : (want == 1 ? queue_pos[p] : queue_neg[p]);
      if (!q.empty()) {
        slot_of[s] = q.front();
        q.erase(q.begin());
      } else if (match_signs && !(want == 1 ? queue_neg : queue_pos)[p].empty()) {
        throw std::invalid_argument("assemble: torus stalk signs incompatible with slots");
      }
    }
    for (int t = win.lo; t <= win.hi; ++t) {
      QMat map(v.dim(t), tval.dim(t));
      int col = 0;
      for (std::size_t s = 0; s < cn.summands.size(); ++s) {
        if (cn.summands[s].shift != t) continue;
        if (slot_of[s] >= 0 && slot_of[s] < v.dim(t)) map(slot_of[s], col) = 1;
        ++col;
      }
      m.edge_maps[e][t - win.lo] = std::move(map);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// checkers

namespace {

constexpr int kEdgeMargin = 4;

struct NaturalMapCheck {
  bool exists = false;
  bool iso = false;
  int witness = 0;
};

NaturalMapCheck follows_coefficients(const WModule& from, const WModule& to,
                                     const std::vector<QMat>& edge, Window win) {
  NaturalMapCheck out;
  ScalarExtension ext = gralg::extend_scalars(from, to.ring, to.has_weyl);
  std::vector<MapPin> pins;
  for (int t = ext.out.valid.lo; t <= ext.out.valid.hi; ++t) {
    if (!from.win.contains(t)) continue;
    QMat sigma = edge[t - from.win.lo];
    if (int(sigma.rows()) != to.dim(t) || int(sigma.cols()) != from.dim(t)) continue;
    pins.push_back({t, ext.unit_at(t, from), sigma});
  }
  SolvedMap nu = gralg::solve_equivariant_map(ext.out, to, 0, pins);
  out.exists = nu.exists;
  if (!nu.exists) return out;
  Window w = ext.out.valid.intersect(to.valid).intersect(win.padded(-kEdgeMargin));
  out.iso = gralg::is_iso_on(nu.f, ext.out, to, 0, w, &out.witness);
  return out;
}

}  // namespace

QceReport check_F_continuity(const DiagramModule& m) {
  QceReport rep;
  const RingDiagram& d = *m.diag;
  for (std::size_t i = 0; i < d.flags.size(); ++i) {
    if (d.flags[i].length() == 0) continue;
    const WModule& v = m.values[i];
    if (v.ring.rank == 0) continue;
    Window w = v.valid.intersect(m.win.padded(-kEdgeMargin));
    for (int t = w.lo; t <= w.hi; ++t) {
      int u = t + v.ring.gen_deg;
      if (!w.contains(u)) continue;
      const QMat& g = v.gen_at(t);
      bool ok = v.dim(t) == v.dim(u) &&
                (v.dim(t) == 0 || (int(g.rows()) == v.dim(u) && int(g.cols()) == v.dim(t) &&
                                   g.rank() == std::size_t(v.dim(t))));
      if (!ok) {
        rep.f_continuous = false;
        rep.failures.push_back({int(i), "loc", t});
        break;
      }
    }
  }
  return rep;
}

QceReport check_qce(const DiagramModule& m) {
  QceReport rep;
  const RingDiagram& d = *m.diag;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    int from = d.edges[e].from, to = d.edges[e].to;
    if (d.flags[from].length() != 0) continue;  // rank-one lane: singleton sources
    const Flag& f = d.flags[to];
    bool is_bottom = d.flags[from].top() == f.bottom();
    bool is_top = d.flags[from].top() == f.top();
    if (!is_bottom && !is_top) continue;
    NaturalMapCheck c = follows_coefficients(m.values[from], m.values[to], m.edge_maps[e], m.win);
    bool ok = c.exists && c.iso;
    if (!ok) {
      CheckFailure fail;
      fail.flag = to;
      fail.kind = is_bottom ? "qc" : "ext";
      if (c.exists) fail.degree = c.witness;
      rep.failures.push_back(fail);
      if (is_bottom) rep.quasi_coherent = false;
      if (is_top) rep.extended = false;
    }
  }
  QceReport fc = check_F_continuity(m);
  rep.f_continuous = fc.f_continuous;
  for (auto& f : fc.failures) rep.failures.push_back(f);
  return rep;
}

// ---------------------------------------------------------------------------
// descent

DiagramModule theta_star(const DiagramModule& m, const RingDiagram& ra) {
  if (m.level != Level::G) throw std::invalid_argument("theta_star: input must be G-level");
  const RingDiagram& d = *m.diag;
  DiagramModule out = zero_module(ra, Level::N, m.win);
  std::vector<ScalarExtension> exts;
  for (std::size_t i = 0; i < d.flags.size(); ++i) {
    int j = ra.flag_index(d.flags[i]);
    if (j < 0) throw std::invalid_argument("theta_star: flag mismatch");
    ScalarExtension ext = gralg::extend_scalars(m.values[i], ra.value[j], ra.module_weyl[j]);
    out.values[j] = ext.out;
    exts.push_back(std::move(ext));
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    int from = d.edges[e].from, to = d.edges[e].to;
    std::vector<MapPin> pins;
    for (int t = m.win.lo; t <= m.win.hi; ++t) {
      if (!exts[from].out.valid.contains(t) || !exts[to].out.valid.contains(t)) continue;
      QMat sigma = m.edge_map_at(int(e), t);
      if (int(sigma.rows()) != m.values[to].dim(t) || int(sigma.cols()) != m.values[from].dim(t))
        continue;
      pins.push_back(
          {t, exts[from].unit_at(t, m.values[from]), exts[to].unit_at(t, m.values[to]) * sigma});
    }
    SolvedMap f = gralg::solve_equivariant_map(exts[from].out, exts[to].out, 0, pins);
    if (!f.exists) throw std::logic_error("theta_star: induced edge map failed to solve");
    out.edge_maps[e] = f.f;
  }
  return out;
}

DiagramModule psi(const DiagramModule& n, const RingDiagram& rinv) {
  if (n.level != Level::N) throw std::invalid_argument("psi: input must be N-level");
  const RingDiagram& d = *n.diag;
  DiagramModule out = zero_module(rinv, Level::G, n.win);
  std::vector<std::vector<QMat>> incls;
  for (std::size_t i = 0; i < d.flags.size(); ++i) {
    int j = rinv.flag_index(d.flags[i]);
    if (j < 0) throw std::invalid_argument("psi: flag mismatch");
    bool we_nontrivial = rinv.cs.we[j].size() > 1;
    if (we_nontrivial) {
      if (!n.values[i].has_weyl) throw std::invalid_argument("psi: missing equivariance data");
      FixedPoints fp = gralg::fixed_points(n.values[i]);
      out.values[j] = fp.out;
      incls.push_back(fp.incl);
    } else {
      out.values[j] = n.values[i];
      out.values[j].has_weyl = rinv.module_weyl[j];
      if (!rinv.module_weyl[j]) out.values[j].weyl.clear();
      std::vector<QMat> id(n.win.length());
      for (int t = n.win.lo; t <= n.win.hi; ++t)
        id[t - n.win.lo] = QMat::identity(n.values[i].dim(t));
      incls.push_back(std::move(id));
    }
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    int from = d.edges[e].from, to = d.edges[e].to;
    std::vector<QMat> maps(n.win.length());
    for (int t = n.win.lo; t <= n.win.hi; ++t) {
      QMat sigma = n.edge_map_at(int(e), t);
      if (int(sigma.rows()) != n.values[to].dim(t) || int(sigma.cols()) != n.values[from].dim(t)) {
        maps[t - n.win.lo] = QMat(out.values[to].dim(t), out.values[from].dim(t));
        continue;
      }
      QMat rhs = sigma * incls[from][t - n.win.lo];
      QMat x;
      if (!incls[to][t - n.win.lo].solve(rhs, x))
        throw std::logic_error("psi: structure map does not preserve invariants");
      maps[t - n.win.lo] = std::move(x);
    }
    out.edge_maps[e] = std::move(maps);
  }
  return out;
}

bool unit_check(const DiagramModule& m, const RingDiagram& ra, int* witness_flag) {
  const RingDiagram& d = *m.diag;
  for (std::size_t i = 0; i < d.flags.size(); ++i) {
    int j = ra.flag_index(d.flags[i]);
    ScalarExtension ext = gralg::extend_scalars(m.values[i], ra.value[j], ra.module_weyl[j]);
    bool we_nontrivial = d.cs.we[i].size() > 1;
    Window w = m.win.padded(-kEdgeMargin).intersect(ext.out.valid).intersect(m.values[i].valid);
    if (!we_nontrivial) {
      std::vector<QMat> f(m.win.length());
      for (int t = m.win.lo; t <= m.win.hi; ++t) f[t - m.win.lo] = ext.unit_at(t, m.values[i]);
      int wit = 0;
      if (!gralg::is_iso_on(f, m.values[i], ext.out, 0, w, &wit)) {
        if (witness_flag) *witness_flag = int(i);
        return false;
      }
      continue;
    }
    FixedPoints fp = gralg::fixed_points(ext.out);
    bool ok = true;
    for (int t = w.lo; t <= w.hi && ok; ++t) {
      QMat rhs = ext.unit_at(t, m.values[i]);
      QMat x;
      if (!fp.incl[t - m.win.lo].solve(rhs, x)) {
        ok = false;
        break;
      }
      if (m.values[i].dim(t) != fp.out.dim(t) ||
          (m.values[i].dim(t) > 0 && x.rank() != std::size_t(m.values[i].dim(t))))
        ok = false;
    }
    if (!ok) {
      if (witness_flag) *witness_flag = int(i);
      return false;
    }
  }
  return true;
}

bool counit_check(const DiagramModule& n, int* witness_flag) {
  const RingDiagram& d = *n.diag;
  for (std::size_t i = 0; i < d.flags.size(); ++i) {
    bool we_nontrivial = d.cs.we[i].size() > 1;
    if (!we_nontrivial) continue;  // theta_* Psi is the identity there
    gralg::NormalityReport rep = gralg::is_normal_module(n.values[i]);
    if (!rep.normal) {
      if (witness_flag) *witness_flag = int(i);
      return false;
    }
  }
  return true;
}

bool modules_isomorphic(const DiagramModule& a, const DiagramModule& b, int* witness_flag) {
  if (a.diag->flags.size() != b.diag->flags.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    auto ca = gralg::classify(a.values[i]);
    auto cb = gralg::classify(b.values[i]);
    if (!ca || !cb || !(ca->summands == cb->summands)) {
      if (witness_flag) *witness_flag = int(i);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// rank-2 sample lane

namespace box {

FreeValue canonical(FreeValue v) {
  for (auto& s : v.shifts) {
    if (v.ring.inv_x) s[0] = 0;
    if (v.ring.inv_y) s[1] = 0;
  }
  std::sort(v.shifts.begin(), v.shifts.end());
  return v;
}

SampleDiagram build_sample_Ra(const SubgroupPoset& poset) {
  if (poset.spec->rank != 2 || poset.spec->weyl_order() != 1)
    throw std::invalid_argument("sample lane requires the 2-torus");
  SampleDiagram d;
  d.poset = &poset;
  int triv = -1;
  for (std::size_t i = 0; i < poset.subgroups.size(); ++i)
    if (poset.subgroups[i].dim == 0 && poset.subgroups[i].m == 1) triv = int(i);
  if (triv < 0) throw std::invalid_argument("sample lane: poset lacks the trivial subgroup");
  for (auto& f : lattice::enumerate_flags(poset, 2)) {
    if (f.bottom() != triv) continue;
    MonomialRing r;
    for (int term : f.terms) {
      const auto& k = poset.subgroups[term];
      if (k.dim >= 1 && !k.kills_character({1, 0})) r.inv_x = true;
      if (k.dim >= 1 && !k.kills_character({0, 1})) r.inv_y = true;
    }
    d.flags.push_back(f);
    d.ring.push_back(r);
  }
  return d;
}

SampleModule constant_sample_module(const SampleDiagram& d, std::array<int, 2> shift) {
  SampleModule m;
  for (std::size_t i = 0; i < d.flags.size(); ++i)
    m.values.push_back(canonical({d.ring[i], {shift}}));
  return m;
}

SampleReport check_sample_coefficients(const SampleDiagram& d, const SampleModule& m) {
  SampleReport rep;
  for (std::size_t i = 0; i < d.flags.size(); ++i)
    for (std::size_t j = 0; j < d.flags.size(); ++j) {
      if (i == j || !lattice::subflag(d.flags[i], d.flags[j])) continue;
      FreeValue ext{d.ring[j], m.values[i].shifts};
      bool ok = canonical(ext).shifts == canonical(m.values[j]).shifts;
      if (!ok) {
        rep.ok = false;
        rep.failing_edges.emplace_back(int(i), int(j));
      }
      if (d.flags[i].length() >= 1 && d.flags[j].length() == 2) ++rep.length2_conditions_checked;
    }
  return rep;
}

}  // namespace box

}  // namespace torcal::diagram
