#include "torcal/homalg.hpp"

#include <algorithm>

namespace torcal::homalg {

using diagram::ModuleSpec;
using gralg::MapPin;
using gralg::RingTag;
using gralg::ScalarExtension;
using gralg::SolvedMap;
using gralg::Summand;
using gralg::SummandKind;

namespace {

constexpr int kMargin = 4;

Level level_of(const RingDiagram& d) {
  return d.flavor == diagram::Flavor::Ra ? Level::N : Level::G;
}

NormalForm reringed(NormalForm nf, RingTag tag, bool weyl) {
  nf.ring = tag;
  nf.has_weyl = weyl;
  nf.weyl_gen_sign = (tag.rank == 1 && tag.gen_deg == -2) ? -1 : 1;
  return nf;
}

}  // namespace

DiagramModule f_K(const RingDiagram& diag, int subgroup, const NormalForm& payload, Window win) {
  const auto& poset = *diag.poset;
  int torus = poset.torus_index();
  ModuleSpec spec;
  if (subgroup != torus) {
    // torsion payloads only: the localized flag values vanish
    for (auto& s : payload.summands)
      if (s.kind == SummandKind::Free || s.kind == SummandKind::Laurent)
        throw std::invalid_argument("f_K: payload must be torsion");
    spec.stalks[subgroup] =
        reringed(payload, diag.value[diag.singleton(subgroup)],
                 diag.module_weyl[diag.singleton(subgroup)]);
    NormalForm empty;
    empty.ring = RingTag::rationals();
    spec.t_stalk = empty;
    return assemble(diag, level_of(diag), spec, win);
  }
  // cofree extension of a payload at the torus
  int ti = diag.singleton(torus);
  NormalForm pay = reringed(payload, diag.value[ti], diag.module_weyl[ti]);
  spec.t_stalk = pay;
  WModule j = realize(gralg::canonicalize(pay), win);
  for (std::size_t i = 0; i < diag.flags.size(); ++i) {
    const auto& f = diag.flags[i];
    if (f.length() != 0 || f.top() == torus) continue;
    RingTag tag = diag.value[i];
    bool weyl = diag.module_weyl[i];
    WModule stalk_val;
    if (tag.gen_deg == -2) {
      stalk_val = gralg::extend_scalars(j, RingTag::laurent_ring(-2), weyl).out;
    } else {
      // invariants of the Laurent extension over the d-ring
      WModule full = gralg::extend_scalars(j, RingTag::laurent_ring(-2), true).out;
      stalk_val = gralg::fixed_points(full).out;
    }
    auto cl = gralg::classify(stalk_val);
    if (!cl) throw std::logic_error("f_K: cofree stalk not classifiable");
    NormalForm nf = reringed(*cl, tag, weyl);
    nf.summands = cl->summands;
    spec.stalks[f.top()] = nf;
  }
  return assemble(diag, level_of(diag), spec, win);
}

int InjectiveTerm::block_offset(int j, int flag, int t) const {
  int off = 0;
  for (int p = 0; p < j; ++p) off += pieces[p].values[flag].dim(t);
  return off;
}

InjectiveTerm make_injective(const RingDiagram& diag, std::vector<InjSummand> summands,
                             Window win) {
  InjectiveTerm term;
  term.diag = &diag;
  term.summands = std::move(summands);
  for (auto& s : term.summands) term.pieces.push_back(f_K(diag, s.subgroup, s.payload, win));
  if (term.pieces.empty()) {
    term.module = diagram::zero_module(diag, level_of(diag), win);
  } else {
    term.module = term.pieces[0];
    for (std::size_t j = 1; j < term.pieces.size(); ++j)
      term.module = diagram::direct_sum(term.module, term.pieces[j]);
  }
  return term;
}

// ---------------------------------------------------------------------------
// stalk Hom bases

StalkHomBasis stalk_hom_basis(const WModule& a, const WModule& b, int t) {
  StalkHomBasis out;
  int g = a.ring.rank == 1 ? a.ring.gen_deg : 0;
  std::vector<int> offset(a.win.length(), -1);
  std::size_t nvars = 0;
  for (int s = a.win.lo; s <= a.win.hi; ++s) {
    if (a.dim(s) == 0 || b.dim(s + t) == 0) continue;
    offset[s - a.win.lo] = int(nvars);
    nvars += std::size_t(b.dim(s + t)) * a.dim(s);
  }
  LinearSystem sys(nvars);
  auto var = [&](int s, int i, int j) {
    return std::size_t(offset[s - a.win.lo]) + std::size_t(i) * a.dim(s) + j;
  };
  for (int s = a.win.lo; s <= a.win.hi; ++s) {
    if (g != 0 && a.win.contains(s + g) && b.win.contains(s + t) && b.win.contains(s + t + g)) {
      int ra = a.dim(s), rag = a.dim(s + g), rb = b.dim(s + t), rbg = b.dim(s + t + g);
      const QMat& ga = a.gen_at(s);
      const QMat& gb = b.gen_at(s + t);
      for (int i = 0; i < rbg; ++i)
        for (int k = 0; k < ra; ++k) {
          std::vector<std::pair<std::size_t, Rat>> row;
          if (offset[s + g - a.win.lo] >= 0 && rag > 0 && int(ga.rows()) == rag)
            for (int j = 0; j < rag; ++j)
              if (ga(j, k) != 0) row.push_back({var(s + g, i, j), ga(j, k)});
          if (offset[s - a.win.lo] >= 0 && rb > 0 && int(gb.rows()) == rbg)
            for (int j = 0; j < rb; ++j)
              if (gb(i, j) != 0) row.push_back({var(s, j, k), -gb(i, j)});
          if (!row.empty()) sys.add_row(row);
        }
    }
    if ((a.has_weyl || b.has_weyl) && offset[s - a.win.lo] >= 0) {
      QMat wa = a.weyl_at(s), wb = b.weyl_at(s + t);
      int ra = a.dim(s), rb = b.dim(s + t);
      for (int i = 0; i < rb; ++i)
        for (int k = 0; k < ra; ++k) {
          std::vector<std::pair<std::size_t, Rat>> row;
          for (int j = 0; j < rb; ++j)
            if (wb(i, j) != 0) row.push_back({var(s, j, k), wb(i, j)});
          for (int j = 0; j < ra; ++j)
            if (wa(j, k) != 0) row.push_back({var(s, i, j), -wa(j, k)});
          if (!row.empty()) sys.add_row(row);
        }
    }
  }
  QMat kernel = sys.solve_kernel();
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    std::vector<QMat> elem(a.win.length());
    for (int s = a.win.lo; s <= a.win.hi; ++s) {
      QMat f(b.dim(s + t), a.dim(s));
      if (offset[s - a.win.lo] >= 0)
        for (int i = 0; i < b.dim(s + t); ++i)
          for (int j = 0; j < a.dim(s); ++j) f(i, j) = kernel(var(s, i, j), c);
      elem[s - a.win.lo] = std::move(f);
    }
    out.elems.push_back(std::move(elem));
  }
  return out;
}

// ---------------------------------------------------------------------------
// naive diagram Hom (the oracle)

std::vector<int> naive_hom_dims(const DiagramModule& a, const DiagramModule& b,
                                const std::vector<int>& degrees) {
  const RingDiagram& d = *a.diag;
  std::vector<int> out;
  for (int t : degrees) {
    // unknowns: per flag, per degree
    std::vector<std::vector<int>> offset(d.flags.size(),
                                         std::vector<int>(a.win.length(), -1));
    std::size_t nvars = 0;
    for (std::size_t fi = 0; fi < d.flags.size(); ++fi)
      for (int s = a.win.lo; s <= a.win.hi; ++s) {
        int va = a.values[fi].dim(s), vb = b.values[fi].dim(s + t);
        if (va == 0 || vb == 0) continue;
        offset[fi][s - a.win.lo] = int(nvars);
        nvars += std::size_t(va) * vb;
      }
    LinearSystem sys(nvars);
    auto var = [&](std::size_t fi, int s, int i, int j) {
      return std::size_t(offset[fi][s - a.win.lo]) + std::size_t(i) * a.values[fi].dim(s) + j;
    };
    for (std::size_t fi = 0; fi < d.flags.size(); ++fi) {
      const WModule& av = a.values[fi];
      const WModule& bv = b.values[fi];
      int g = av.ring.rank == 1 ? av.ring.gen_deg : 0;
      for (int s = a.win.lo; s <= a.win.hi; ++s) {
        // generator squares
        if (g != 0 && a.win.contains(s + g) && bv.win.contains(s + t) &&
            bv.win.contains(s + t + g)) {
          const QMat& ga = av.gen_at(s);
          const QMat& gb = bv.gen_at(s + t);
          int ra = av.dim(s), rag = av.dim(s + g), rb = bv.dim(s + t), rbg = bv.dim(s + t + g);
          for (int i = 0; i < rbg; ++i)
            for (int k = 0; k < ra; ++k) {
              std::vector<std::pair<std::size_t, Rat>> row;
              if (offset[fi][s + g - a.win.lo] >= 0 && rag > 0 && int(ga.rows()) == rag)
                for (int j = 0; j < rag; ++j)
                  if (ga(j, k) != 0) row.push_back({var(fi, s + g, i, j), ga(j, k)});
              if (offset[fi][s - a.win.lo] >= 0 && rb > 0 && int(gb.rows()) == rbg)
                for (int j = 0; j < rb; ++j)
                  if (gb(i, j) != 0) row.push_back({var(fi, s, j, k), -gb(i, j)});
              if (!row.empty()) sys.add_row(row);
            }
        }
        // weyl squares
        if ((av.has_weyl || bv.has_weyl) && offset[fi][s - a.win.lo] >= 0) {
          QMat wa = av.weyl_at(s), wb = bv.weyl_at(s + t);
          for (int i = 0; i < bv.dim(s + t); ++i)
            for (int k = 0; k < av.dim(s); ++k) {
              std::vector<std::pair<std::size_t, Rat>> row;
              for (int j = 0; j < bv.dim(s + t); ++j)
                if (wb(i, j) != 0) row.push_back({var(fi, s, j, k), wb(i, j)});
              for (int j = 0; j < av.dim(s); ++j)
                if (wa(j, k) != 0) row.push_back({var(fi, s, i, j), -wa(j, k)});
              if (!row.empty()) sys.add_row(row);
            }
        }
      }
    }
    // structure squares: f_to . edge_a = edge_b . f_from
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
      int from = d.edges[e].from, to = d.edges[e].to;
      for (int s = a.win.lo; s <= a.win.hi; ++s) {
        QMat ea = a.edge_map_at(int(e), s);
        QMat eb = b.edge_map_at(int(e), s + t);
        int ra = a.values[from].dim(s), rto = a.values[to].dim(s);
        int rb = b.values[from].dim(s + t), rbto = b.values[to].dim(s + t);
        if (int(ea.rows()) != rto || int(ea.cols()) != ra) continue;
        if (int(eb.rows()) != rbto || int(eb.cols()) != rb) continue;
        for (int i = 0; i < rbto; ++i)
          for (int k = 0; k < ra; ++k) {
            std::vector<std::pair<std::size_t, Rat>> row;
            if (offset[to][s - a.win.lo] >= 0)
              for (int j = 0; j < rto; ++j)
                if (ea(j, k) != 0) row.push_back({var(std::size_t(to), s, i, j), ea(j, k)});
            if (offset[from][s - a.win.lo] >= 0)
              for (int j = 0; j < rb; ++j)
                if (eb(i, j) != 0) row.push_back({var(std::size_t(from), s, j, k), -eb(i, j)});
            if (!row.empty()) sys.add_row(row);
          }
      }
    }
    out.push_back(int(sys.solve_kernel().cols()));
  }
  return out;
}

std::vector<int> hom_into_injective_dims(const DiagramModule& m, const InjectiveTerm& term,
                                         const std::vector<int>& degrees) {
  std::vector<int> out(degrees.size(), 0);
  const RingDiagram& d = *term.diag;
  for (std::size_t j = 0; j < term.summands.size(); ++j) {
    int k = term.summands[j].subgroup;
    int si = d.singleton(k);
    WModule payload = realize(
        gralg::canonicalize(reringed(term.summands[j].payload, d.value[si], d.module_weyl[si])),
        m.win);
    for (std::size_t di = 0; di < degrees.size(); ++di)
      out[di] += int(stalk_hom_basis(m.values[si], payload, degrees[di]).elems.size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// extension of stalk maps to diagram maps

namespace {

// extend a degree-t map phi: m(K_j) -> payload_j to a map m -> I (into the
// j-th block); requires m extended (flag values generated by the top stalk)
DiagramMap extend_injective_hom(const DiagramModule& m, const InjectiveTerm& I, int j,
                                const std::vector<QMat>& phi, int t) {
  const RingDiagram& d = *m.diag;
  const DiagramModule& piece = I.pieces[j];
  int torus = d.poset->torus_index();
  int kj = I.summands[j].subgroup;
  DiagramMap out;
  out.component.assign(d.flags.size(), {});
  std::vector<std::vector<QMat>> into_piece(d.flags.size());
  for (std::size_t fi = 0; fi < d.flags.size(); ++fi)
    into_piece[fi].assign(m.win.length(), QMat());

  auto zero_fill = [&](std::size_t fi) {
    for (int s = m.win.lo; s <= m.win.hi; ++s)
      into_piece[fi][s - m.win.lo] = QMat(piece.values[fi].dim(s + t), m.values[fi].dim(s));
  };

  if (kj != torus) {
    for (std::size_t fi = 0; fi < d.flags.size(); ++fi) zero_fill(fi);
    int si = d.singleton(kj);
    for (int s = m.win.lo; s <= m.win.hi; ++s) {
      const QMat& p = phi[s - m.win.lo];
      if (int(p.rows()) == piece.values[si].dim(s + t) && int(p.cols()) == m.values[si].dim(s))
        into_piece[si][s - m.win.lo] = p;
    }
  } else {
    int ti = d.singleton(torus);
    for (int s = m.win.lo; s <= m.win.hi; ++s) {
      const QMat& p = phi[s - m.win.lo];
      into_piece[ti][s - m.win.lo] =
          (int(p.rows()) == piece.values[ti].dim(s + t) && int(p.cols()) == m.values[ti].dim(s))
              ? p
              : QMat(piece.values[ti].dim(s + t), m.values[ti].dim(s));
    }
    // flags: pinned by the square over the torus edge
    for (std::size_t fi = 0; fi < d.flags.size(); ++fi) {
      if (d.flags[fi].length() == 0) continue;
      // locate the edges T -> flag in m and in the piece
      int em = -1;
      for (std::size_t e = 0; e < d.edges.size(); ++e)
        if (d.edges[e].to == int(fi) && d.flags[d.edges[e].from].length() == 0 &&
            d.flags[d.edges[e].from].top() == torus)
          em = int(e);
      std::vector<MapPin> pins;
      for (int s = m.win.lo; s <= m.win.hi; ++s) {
        QMat sm = m.edge_map_at(em, s);
        QMat sp = piece.edge_map_at(em, s + t);
        if (int(sm.rows()) != m.values[fi].dim(s) || int(sp.rows()) != piece.values[fi].dim(s + t))
          continue;
        pins.push_back({s, sm, sp * into_piece[ti][s - m.win.lo]});
      }
      SolvedMap f = gralg::solve_equivariant_map(m.values[fi], piece.values[fi], t, pins);
      if (!f.exists) throw std::logic_error("extend_injective_hom: flag extension failed");
      into_piece[fi] = f.f;
    }
    // non-torus singletons: through the edge into the rank-one flag
    for (std::size_t fi = 0; fi < d.flags.size(); ++fi) {
      const auto& flag = d.flags[fi];
      if (flag.length() != 0 || flag.top() == torus) continue;
      // the flag (T > K)
      int target = -1, em = -1, ep = -1;
      for (std::size_t e = 0; e < d.edges.size(); ++e) {
        int from = d.edges[e].from, to = d.edges[e].to;
        if (from == int(fi) && d.flags[to].length() == 1 && d.flags[to].top() == torus &&
            d.flags[to].bottom() == flag.top()) {
          target = to;
          em = int(e);
          ep = int(e);
        }
      }
      if (target < 0) {
        zero_fill(fi);
        continue;
      }
      Window ok = m.values[fi].valid.intersect(m.values[target].valid)
                      .intersect(piece.values[fi].valid.shifted(-t))
                      .intersect(piece.values[target].valid.shifted(-t));
      for (int s = m.win.lo; s <= m.win.hi; ++s) {
        QMat sigma = m.edge_map_at(em, s);
        QMat iota = piece.edge_map_at(ep, s + t);
        int rows = piece.values[fi].dim(s + t), cols = m.values[fi].dim(s);
        QMat rhs_tgt = into_piece[target][s - m.win.lo];
        QMat f(rows, cols);
        if (ok.contains(s) && rows > 0 && cols > 0 &&
            int(sigma.rows()) == m.values[target].dim(s) &&
            int(iota.rows()) == piece.values[target].dim(s + t)) {
          QMat rhs = rhs_tgt * sigma;
          QMat x;
          if (!iota.solve(rhs, x))
            throw std::logic_error("extend_injective_hom: stalk restriction failed");
          f = std::move(x);
        }
        into_piece[fi][s - m.win.lo] = std::move(f);
      }
    }
  }
  // pad into the full direct sum
  for (std::size_t fi = 0; fi < d.flags.size(); ++fi) {
    out.component[fi].assign(m.win.length(), QMat());
    for (int s = m.win.lo; s <= m.win.hi; ++s) {
      int total = I.module.values[fi].dim(s + t);
      int off = I.block_offset(j, int(fi), s + t);
      QMat big(total, m.values[fi].dim(s));
      const QMat& small = into_piece[fi][s - m.win.lo];
      if (int(small.cols()) == m.values[fi].dim(s))
        for (std::size_t i = 0; i < small.rows(); ++i)
          for (std::size_t c = 0; c < small.cols(); ++c) big(off + i, c) = small(i, c);
      out.component[fi][s - m.win.lo] = std::move(big);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// embeddings

Embedding embed_in_injectives(const DiagramModule& m) {
  const RingDiagram& d = *m.diag;
  const auto& poset = *d.poset;
  int torus = poset.torus_index();
  int ti = d.singleton(torus);
  Embedding out;

  std::vector<InjSummand> summands;
  // the torus payload: the stalk itself (every graded vector space works)
  bool has_t = false;
  {
    auto cl = gralg::classify(m.values[ti]);
    if (!cl) throw std::domain_error("embed_in_injectives: torus stalk not classifiable");
    if (!cl->summands.empty()) {
      summands.push_back({torus, *cl});
      has_t = true;
    }
  }
  // torsion hulls at the finite subgroups
  std::vector<std::pair<int, NormalForm>> hulls;  // (subgroup, hull payload)
  for (std::size_t i = 0; i < poset.subgroups.size(); ++i) {
    if (int(i) == torus) continue;
    int si = d.singleton(int(i));
    auto cl = gralg::classify(m.values[si]);
    if (!cl) throw std::domain_error("embed_in_injectives: stalk not classifiable");
    NormalForm hull;
    hull.ring = cl->ring;
    hull.has_weyl = cl->has_weyl;
    hull.weyl_gen_sign = cl->weyl_gen_sign;
    int g = cl->ring.gen_deg;
    int ws = cl->weyl_gen_sign;
    for (auto& s : cl->summands) {
      if (s.kind == SummandKind::Torsion) {
        int socle = s.shift + (s.torsion_exp - 1) * g;
        int sign = (ws == -1 && (s.torsion_exp - 1) % 2 != 0) ? -s.sign : s.sign;
        hull.summands.push_back({SummandKind::Divisible, socle, 1, sign});
      } else if (s.kind == SummandKind::Divisible) {
        hull.summands.push_back(s);
      }
    }
    if (!hull.summands.empty()) {
      summands.push_back({int(i), gralg::canonicalize(hull)});
      hulls.push_back({int(i), hull});
    }
  }
  out.term = make_injective(d, summands, m.win);

  // assemble the map summand by summand
  std::vector<DiagramMap> comps;
  std::size_t j = 0;
  if (has_t) {
    std::vector<QMat> idmaps(m.win.length());
    for (int s = m.win.lo; s <= m.win.hi; ++s) {
      int dim = m.values[ti].dim(s);
      int pdim = out.term.pieces[j].values[ti].dim(s);
      idmaps[s - m.win.lo] = dim == pdim ? QMat::identity(dim) : QMat(pdim, dim);
    }
    comps.push_back(extend_injective_hom(m, out.term, int(j), idmaps, 0));
    ++j;
  }
  for (; j < out.term.summands.size(); ++j) {
    int k = out.term.summands[j].subgroup;
    int si = d.singleton(k);
    const WModule& stalk = m.values[si];
    const WModule& hull = out.term.pieces[j].values[si];
    // pin the socle (the kernel of the generator) into the hull's socle,
    // matched within Weyl eigenspaces
    std::vector<MapPin> pins;
    Window w = stalk.valid.intersect(m.win.padded(-kMargin));
    for (int s = w.lo; s <= w.hi; ++s) {
      if (!w.contains(s + stalk.ring.gen_deg)) continue;
      const QMat& gm = stalk.gen_at(s);
      const QMat& gh = hull.gen_at(s);
      if (int(gm.cols()) != stalk.dim(s) || int(gh.cols()) != hull.dim(s)) continue;
      for (int lam : {1, -1}) {
        QMat pm = stalk.weyl_at(s) - QMat::scalar(stalk.dim(s), lam);
        QMat ph = hull.weyl_at(s) - QMat::scalar(hull.dim(s), lam);
        QMat sm = gm * (stalk.has_weyl ? pm.kernel() : QMat::identity(stalk.dim(s)));
        QMat sh = gh * (hull.has_weyl ? ph.kernel() : QMat::identity(hull.dim(s)));
        QMat socm = stalk.has_weyl ? pm.kernel() : QMat::identity(stalk.dim(s));
        QMat soch = hull.has_weyl ? ph.kernel() : QMat::identity(hull.dim(s));
        // restrict to kernels of the generator
        QMat km = (gm * socm).kernel();
        QMat kh = (gh * soch).kernel();
        QMat socle_m = socm * km;
        QMat socle_h = soch * kh;
        (void)sm;
        (void)sh;
        if (socle_m.cols() == 0) continue;
        if (socle_h.cols() < socle_m.cols())
          throw std::logic_error("embed_in_injectives: hull socle too small");
        QMat val(hull.dim(s), socle_m.cols());
        for (std::size_t c = 0; c < socle_m.cols(); ++c)
          for (std::size_t r = 0; r < socle_h.rows(); ++r) val(r, c) = socle_h(r, c);
        pins.push_back({s, socle_m, val});
        if (!stalk.has_weyl) break;
      }
    }
    SolvedMap f = gralg::solve_equivariant_map(stalk, hull, 0, pins);
    if (!f.exists) throw std::logic_error("embed_in_injectives: hull map failed to solve");
    comps.push_back(extend_injective_hom(m, out.term, int(j), f.f, 0));
  }
  // sum the component maps
  out.map.component.assign(d.flags.size(), {});
  for (std::size_t fi = 0; fi < d.flags.size(); ++fi) {
    out.map.component[fi].assign(m.win.length(), QMat());
    for (int s = m.win.lo; s <= m.win.hi; ++s) {
      QMat acc(out.term.module.values[fi].dim(s), m.values[fi].dim(s));
      for (auto& c : comps) {
        const QMat& part = c.component[fi][s - m.win.lo];
        if (part.rows() == acc.rows() && part.cols() == acc.cols()) acc = acc + part;
      }
      out.map.component[fi][s - m.win.lo] = std::move(acc);
    }
  }
  out.mono = is_mono(m, out.term.module, out.map);
  return out;
}

bool is_mono(const DiagramModule& m, const DiagramModule& target, const DiagramMap& f) {
  Window w = m.win.padded(-kMargin);
  for (std::size_t fi = 0; fi < m.values.size(); ++fi) {
    Window v = w.intersect(m.values[fi].valid).intersect(target.values[fi].valid);
    for (int s = v.lo; s <= v.hi; ++s) {
      const QMat& c = f.component[fi][s - m.win.lo];
      if (int(c.cols()) != m.values[fi].dim(s)) return false;
      if (c.cols() > 0 && c.kernel().cols() > 0) return false;
    }
  }
  return true;
}

bool is_zero_module(const DiagramModule& m) {
  Window w = m.win.padded(-kMargin);
  for (auto& v : m.values) {
    Window vw = w.intersect(v.valid);
    for (int s = vw.lo; s <= vw.hi; ++s)
      if (v.dim(s) != 0) return false;
  }
  return true;
}

DiagramModule cokernel(const DiagramModule& m, const DiagramModule& target, const DiagramMap& f) {
  const RingDiagram& d = *target.diag;
  DiagramModule q = diagram::zero_module(d, target.level, target.win);
  std::vector<std::vector<QuotientSpace>> quot(d.flags.size());
  for (std::size_t fi = 0; fi < d.flags.size(); ++fi) {
    const WModule& tv = target.values[fi];
    quot[fi].resize(target.win.length());
    WModule& qv = q.values[fi];
    qv.ring = tv.ring;
    qv.valid = tv.valid.intersect(m.values[fi].valid);
    qv.has_weyl = tv.has_weyl;
    qv.weyl_gen_sign = tv.weyl_gen_sign;
    qv.unbounded_above = tv.unbounded_above || m.values[fi].unbounded_above;
    qv.unbounded_below = tv.unbounded_below || m.values[fi].unbounded_below;
    if (qv.has_weyl) qv.weyl.assign(target.win.length(), QMat());
    for (int s = target.win.lo; s <= target.win.hi; ++s) {
      const QMat& c = f.component[fi][s - target.win.lo];
      QMat im = (int(c.rows()) == tv.dim(s)) ? c.image() : QMat(tv.dim(s), 0);
      quot[fi][s - target.win.lo] = quotient_by(im, tv.dim(s));
      qv.dims[s - target.win.lo] = int(quot[fi][s - target.win.lo].proj.rows());
    }
    for (int s = target.win.lo; s <= target.win.hi; ++s) {
      if (qv.has_weyl) {
        const auto& qs = quot[fi][s - target.win.lo];
        qv.weyl[s - target.win.lo] = qs.proj * tv.weyl_at(s) * qs.section;
      }
      if (qv.ring.rank == 1) {
        int u = s + qv.ring.gen_deg;
        if (!target.win.contains(u)) continue;
        const QMat& g = tv.gen_at(s);
        if (int(g.rows()) != tv.dim(u) || int(g.cols()) != tv.dim(s)) continue;
        const auto& qs = quot[fi][s - target.win.lo];
        const auto& qu = quot[fi][u - target.win.lo];
        qv.gen[s - target.win.lo] = qu.proj * g * qs.section;
      }
    }
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    int from = d.edges[e].from, to = d.edges[e].to;
    for (int s = target.win.lo; s <= target.win.hi; ++s) {
      QMat em = target.edge_map_at(int(e), s);
      if (int(em.rows()) != target.values[to].dim(s) ||
          int(em.cols()) != target.values[from].dim(s))
        continue;
      q.edge_maps[e][s - target.win.lo] = quot[to][s - target.win.lo].proj * em *
                                          quot[from][s - target.win.lo].section;
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// resolutions and Ext

namespace {

DiagramMap compose_maps(const DiagramMap& second, const std::vector<std::vector<QMat>>& first,
                        const DiagramModule& domain) {
  DiagramMap out;
  out.component.assign(second.component.size(), {});
  for (std::size_t fi = 0; fi < second.component.size(); ++fi) {
    out.component[fi].assign(domain.win.length(), QMat());
    for (int s = domain.win.lo; s <= domain.win.hi; ++s) {
      const QMat& a = first[fi][s - domain.win.lo];
      const QMat& b = second.component[fi][s - domain.win.lo];
      if (b.cols() == a.rows())
        out.component[fi][s - domain.win.lo] = b * a;
      else
        out.component[fi][s - domain.win.lo] = QMat(b.rows(), a.cols());
    }
  }
  return out;
}

}  // namespace

Resolution injective_resolution(const DiagramModule& m, int max_len, bool hard_fail) {
  Resolution res;
  DiagramModule cur = m;
  std::vector<std::vector<QMat>> proj_prev;  // projection target^{s-1} -> cur
  bool have_proj = false;
  res.exact = true;
  for (int step = 0; step <= max_len + 1; ++step) {
    if (is_zero_module(cur)) {
      res.length = int(res.terms.size()) - 1;
      res.terminated = true;
      // verify exactness: composite of consecutive maps vanishes and ranks match
      for (std::size_t s = 0; s + 1 < res.maps.size(); ++s) {
        const DiagramModule& mid = res.terms[s].module;
        Window w = m.win.padded(-kMargin);
        for (std::size_t fi = 0; fi < mid.values.size(); ++fi) {
          Window v = w.intersect(mid.values[fi].valid);
          if (mid.values[fi].unbounded_above) v.hi = std::min(v.hi, mid.values[fi].valid.hi - kMargin);
          for (int t = v.lo; t <= v.hi; ++t) {
            const QMat& d1 = res.maps[s].component[fi][t - m.win.lo];
            const QMat& d2 = res.maps[s + 1].component[fi][t - m.win.lo];
            if (d2.cols() != d1.rows()) continue;
            if (!(d2 * d1).is_zero()) res.exact = false;
            std::size_t rk1 = d1.rank();
            std::size_t kd2 = d2.kernel().cols();
            if (rk1 != kd2) res.exact = false;
          }
        }
      }
      return res;
    }
    if (step == max_len + 1) break;
    Embedding e = embed_in_injectives(cur);
    if (!e.mono) res.exact = false;
    if (!have_proj) {
      res.maps.push_back(e.map);
    } else {
      res.maps.push_back(compose_maps(e.map, proj_prev, m));
    }
    res.terms.push_back(std::move(e.term));
    DiagramModule next = cokernel(cur, res.terms.back().module, e.map);
    // projection from the new term to the cokernel
    proj_prev.assign(next.values.size(), {});
    {
      const DiagramModule& tgt = res.terms.back().module;
      for (std::size_t fi = 0; fi < next.values.size(); ++fi) {
        proj_prev[fi].assign(m.win.length(), QMat());
        for (int s = m.win.lo; s <= m.win.hi; ++s) {
          QMat im = (int(e.map.component[fi][s - m.win.lo].rows()) == tgt.values[fi].dim(s))
                        ? e.map.component[fi][s - m.win.lo].image()
                        : QMat(tgt.values[fi].dim(s), 0);
          proj_prev[fi][s - m.win.lo] = quotient_by(im, tgt.values[fi].dim(s)).proj;
        }
      }
    }
    have_proj = true;
    cur = std::move(next);
  }
  res.terminated = false;
  res.length = int(res.terms.size());
  if (hard_fail)
    throw std::runtime_error("injective_resolution: did not terminate within max_len");
  return res;
}

int ExtTable::dim(int s, int t) const {
  auto it = entries.find({s, t});
  return it == entries.end() ? 0 : it->second;
}

std::map<int, int> ExtTable::totals() const {
  std::map<int, int> tot;
  for (auto& [st, d] : entries) tot[st.second - st.first] += d;
  return tot;
}

ExtTable ext(const DiagramModule& m, const DiagramModule& n, Window t_window, int max_len) {
  const RingDiagram& d = *m.diag;
  Resolution res = injective_resolution(n, max_len);
  ExtTable table;
  table.rank = d.poset->spec->rank;

  for (int t = t_window.lo; t <= t_window.hi; ++t) {
    // bases of Hom(m, I^s)_t in stalk coordinates
    struct HomData {
      std::vector<StalkHomBasis> per_summand;
      std::vector<WModule> payloads;
      int total = 0;
    };
    std::vector<HomData> hom(res.terms.size());
    for (std::size_t s = 0; s < res.terms.size(); ++s) {
      for (std::size_t j = 0; j < res.terms[s].summands.size(); ++j) {
        int k = res.terms[s].summands[j].subgroup;
        int si = d.singleton(k);
        WModule payload =
            realize(gralg::canonicalize(reringed(res.terms[s].summands[j].payload, d.value[si],
                                                 d.module_weyl[si])),
                    m.win);
        hom[s].per_summand.push_back(stalk_hom_basis(m.values[si], payload, t));
        hom[s].payloads.push_back(std::move(payload));
        hom[s].total += int(hom[s].per_summand.back().elems.size());
      }
    }
    // differentials D_s: Hom(m, I^s) -> Hom(m, I^{s+1})
    std::vector<QMat> D(res.terms.size());
    for (std::size_t s = 0; s + 1 < res.terms.size(); ++s) {
      QMat mat(hom[s + 1].total, hom[s].total);
      int col = 0;
      for (std::size_t j = 0; j < res.terms[s].summands.size(); ++j) {
        for (auto& elem : hom[s].per_summand[j].elems) {
          DiagramMap full = extend_injective_hom(m, res.terms[s], int(j), elem, t);
          // compose with the differential I^s -> I^{s+1}
          const DiagramMap& diff = res.maps[s + 1];
          // extract stalk coordinates in I^{s+1}
          int row0 = 0;
          for (std::size_t j2 = 0; j2 < res.terms[s + 1].summands.size(); ++j2) {
            int k2 = res.terms[s + 1].summands[j2].subgroup;
            int si2 = d.singleton(k2);
            const WModule& pay2 = hom[s + 1].payloads[j2];
            // composite stalk map at K2 projected to the j2-block
            std::vector<QMat> comp(m.win.length());
            for (int deg = m.win.lo; deg <= m.win.hi; ++deg) {
              QMat part(pay2.dim(deg + t), m.values[si2].dim(deg));
              const QMat& into = full.component[si2][deg - m.win.lo];
              QMat dmat(0, 0);
              {
                const QMat& cand = diff.component[si2][deg + t - m.win.lo
                                                        ];
                dmat = cand;
              }
              if (int(dmat.cols()) == int(into.rows()) && into.cols() > 0) {
                QMat whole = dmat * into;
                int off = res.terms[s + 1].block_offset(int(j2), si2, deg + t);
                for (int i = 0; i < pay2.dim(deg + t); ++i)
                  for (std::size_t c = 0; c < whole.cols(); ++c) part(i, c) = whole(off + i, c);
              }
              comp[deg - m.win.lo] = std::move(part);
            }
            // coordinates in the hom basis of summand j2
            const auto& basis = hom[s + 1].per_summand[j2].elems;
            if (!basis.empty()) {
              // flatten
              std::size_t flat = 0;
              for (int deg = m.win.lo; deg <= m.win.hi; ++deg)
                flat += std::size_t(pay2.dim(deg + t)) * m.values[si2].dim(deg);
              QMat bs(flat, basis.size()), target(flat, 1);
              for (std::size_t b = 0; b < basis.size(); ++b) {
                std::size_t r = 0;
                for (int deg = m.win.lo; deg <= m.win.hi; ++deg) {
                  const QMat& blk = basis[b][deg - m.win.lo];
                  for (std::size_t i = 0; i < blk.rows(); ++i)
                    for (std::size_t c = 0; c < blk.cols(); ++c) bs(r++, b) = blk(i, c);
                }
              }
              {
                std::size_t r = 0;
                for (int deg = m.win.lo; deg <= m.win.hi; ++deg) {
                  const QMat& blk = comp[deg - m.win.lo];
                  for (std::size_t i = 0; i < blk.rows(); ++i)
                    for (std::size_t c = 0; c < blk.cols(); ++c) target(r++, 0) = blk(i, c);
                }
              }
              QMat x;
              if (!bs.solve(target, x))
                throw std::logic_error("ext: composite not in the hom space");
              for (std::size_t i = 0; i < basis.size(); ++i) mat(row0 + i, col) = x(i, 0);
            }
            row0 += int(basis.size());
          }
          ++col;
        }
      }
      D[s] = std::move(mat);
    }
    // cohomology dimensions
    for (std::size_t s = 0; s < res.terms.size(); ++s) {
      int kerdim;
      if (s + 1 < res.terms.size())
        kerdim = int(D[s].kernel().cols());
      else
        kerdim = hom[s].total;
      int imdim = 0;
      if (s > 0) imdim = int(D[s - 1].rank());
      int dim = kerdim - imdim;
      if (dim != 0) table.entries[{int(s), t}] = dim;
    }
  }
  return table;
}

}  // namespace torcal::homalg
