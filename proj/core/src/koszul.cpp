#include "torcal/koszul.hpp"

#include <vector>

namespace torcal::gralg {

KoszulRank1 stable_koszul_rank1(RingTag poly_ring, Window win) {
  if (poly_ring.rank != 1 || poly_ring.laurent)
    throw std::invalid_argument("stable_koszul_rank1: need a rank-one polynomial ring");
  KoszulRank1 out;
  NormalForm free;
  free.ring = poly_ring;
  free.summands = {{SummandKind::Free, 0, 1, 1}};
  out.k0 = realize(free, win);
  ScalarExtension loc = extend_scalars(out.k0, RingTag::laurent_ring(poly_ring.gen_deg), false);
  out.k1 = loc.out;
  out.d0 = loc.unit;

  // H^0 = ker(d0), H^1 = coker(d0) with induced generator action
  out.h0_vanishes = true;
  Window v = out.k0.valid.intersect(out.k1.valid);
  for (int t = v.lo; t <= v.hi; ++t) {
    QMat u = loc.unit_at(t, out.k0);
    if (int(u.cols()) == out.k0.dim(t) && u.kernel().cols() > 0) out.h0_vanishes = false;
  }
  out.h1 = WModule::zero(poly_ring, win);
  out.h1.valid = v;
  out.h1.unbounded_above = true;
  std::vector<QMat> proj(win.length());
  for (int t = v.lo; t <= v.hi; ++t) {
    QMat u = loc.unit_at(t, out.k0);
    // quotient of k1_t by im(u)
    QMat im = u.image();
    QMat basis = im;
    std::vector<std::size_t> extra;
    for (int i = 0; i < out.k1.dim(t); ++i) {
      QMat e(out.k1.dim(t), 1);
      e(i, 0) = 1;
      QMat cand = basis.cols() == 0 ? e : basis.hstack(e);
      if (cand.rank() > basis.rank()) {
        basis = cand;
        extra.push_back(i);
      }
    }
    out.h1.dims[t - win.lo] = int(extra.size());
    QMat p(extra.size(), out.k1.dim(t));
    QMat full = im.cols() == 0 ? QMat::identity(out.k1.dim(t)) : basis;
    for (int i = 0; i < out.k1.dim(t); ++i) {
      QMat e(out.k1.dim(t), 1);
      e(i, 0) = 1;
      QMat x;
      if (!full.solve(e, x)) throw std::logic_error("stable_koszul_rank1: quotient failure");
      for (std::size_t j = 0; j < extra.size(); ++j)
        p(j, i) = im.cols() == 0 ? e(extra[j], 0) : x(im.cols() + j, 0);
    }
    proj[t - win.lo] = std::move(p);
  }
  for (int t = v.lo; t <= v.hi; ++t) {
    int u2 = t + poly_ring.gen_deg;
    if (u2 < v.lo) continue;
    // induced map on quotients: proj_{t+g} * gen_{k1} * section; build via solve
    const QMat& g = out.k1.gen_at(t);
    if (g.rows() == 0 && g.cols() == 0 && out.k1.dim(t) * out.k1.dim(u2) != 0) continue;
    // gen on quotient: q(t) -> q(u2): choose representatives via pseudo-section
    // proj has full row rank; solve proj * s = I for a section s
    QMat s;
    QMat pt = proj[t - win.lo];
    if (pt.rows() == 0) {
      out.h1.gen[t - win.lo] = QMat(out.h1.dims[u2 - win.lo], 0);
      continue;
    }
    if (!pt.solve(QMat::identity(pt.rows()), s))
      throw std::logic_error("stable_koszul_rank1: no section");
    out.h1.gen[t - win.lo] = proj[u2 - win.lo] * g * s;
  }
  return out;
}

WModule local_cohomology_payload(RingTag poly_ring, Window win, bool with_weyl) {
  NormalForm nf;
  nf.ring = poly_ring;
  nf.has_weyl = with_weyl;
  nf.weyl_gen_sign = (poly_ring.gen_deg == -2) ? -1 : 1;
  // socle in degree -gen_deg; its Weyl label matches the class of u^-1
  int socle_sign = nf.weyl_gen_sign;
  nf.summands = {{SummandKind::Divisible, -poly_ring.gen_deg, 1, with_weyl ? socle_sign : 1}};
  return realize(nf, win);
}

KoszulRank2Report stable_koszul_rank2(int box, Window win) {
  KoszulRank2Report rep;
  // bases: K0 = {(a,b): a,b >= 0}, K1 = {(a,b): b >= 0} + {(a,b): a >= 0},
  // K2 = all, exponents within [-box, box]
  auto degrees_of = [&](int m, bool ax, bool bx, std::vector<std::pair<int, int>>& out) {
    out.clear();
    for (int a = -box; a <= box; ++a) {
      int b = m - a;
      if (std::abs(b) > box) continue;
      if (!ax && a < 0) continue;
      if (!bx && b < 0) continue;
      out.emplace_back(a, b);
    }
  };
  for (int t = win.lo; t <= win.hi; ++t) {
    if (t % 2 != 0) continue;
    int m = -t / 2;  // total exponent
    if (std::abs(m) > box - 2) continue;  // keep to the box interior
    std::vector<std::pair<int, int>> b0, b1a, b1b, b2;
    degrees_of(m, false, false, b0);
    degrees_of(m, true, false, b1a);
    degrees_of(m, false, true, b1b);
    degrees_of(m, true, true, b2);
    auto index_of = [](const std::vector<std::pair<int, int>>& basis, std::pair<int, int> e) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == e) return int(i);
      return -1;
    };
    QMat d0(b1a.size() + b1b.size(), b0.size());
    for (std::size_t j = 0; j < b0.size(); ++j) {
      int i1 = index_of(b1a, b0[j]);
      int i2 = index_of(b1b, b0[j]);
      if (i1 >= 0) d0(i1, j) = 1;
      if (i2 >= 0) d0(b1a.size() + i2, j) = 1;
    }
    QMat d1(b2.size(), b1a.size() + b1b.size());
    for (std::size_t j = 0; j < b1a.size(); ++j) {
      int i = index_of(b2, b1a[j]);
      if (i >= 0) d1(i, j) = 1;
    }
    for (std::size_t j = 0; j < b1b.size(); ++j) {
      int i = index_of(b2, b1b[j]);
      if (i >= 0) d1(i, b1a.size() + j) = -1;
    }
    int r0 = int(d0.rank()), r1 = int(d1.rank());
    rep.h0[t] = int(b0.size()) - r0;
    rep.h1[t] = int(b1a.size() + b1b.size()) - r1 - r0;
    rep.h2[t] = int(b2.size()) - r1;
  }
  return rep;
}

}  // namespace torcal::gralg
