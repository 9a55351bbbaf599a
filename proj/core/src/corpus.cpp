#include "torcal/corpus.hpp"

#include "torcal/homalg.hpp"

namespace torcal::corpus {

using diagram::ModuleSpec;
using gralg::NormalForm;
using gralg::RingTag;
using gralg::Summand;
using gralg::SummandKind;

DiagramModule random_qce_module(const RingDiagram& diag, diagram::Level level, Window win,
                                std::mt19937_64& rng, const RandomModuleParams& params) {
  const auto& poset = *diag.poset;
  int torus = poset.torus_index();
  std::uniform_int_distribution<int> npat(0, params.max_pattern);
  std::uniform_int_distribution<int> ntor(0, params.max_torsion);
  std::uniform_int_distribution<int> expd(1, params.max_exp);
  std::uniform_int_distribution<int> bit(0, 1);
  // keep every summand's support well inside the window so the truncations
  // stay faithful (tops below the upper margin, torsion tails above the lower)
  int band_hi = win.hi - 6;
  int band_lo = win.lo + 10 + 4 * params.max_exp;
  if (band_lo > band_hi) band_lo = band_hi - 1;
  std::uniform_int_distribution<int> shiftd(band_lo, band_hi);

  // the surviving pattern shared by all stalks: (parity, sign at the slot)
  int np = npat(rng);
  std::vector<std::pair<int, int>> pattern;
  for (int i = 0; i < np; ++i) pattern.emplace_back(bit(rng), bit(rng) ? 1 : -1);

  ModuleSpec spec;
  for (std::size_t i = 0; i < poset.subgroups.size(); ++i) {
    int k = int(i);
    if (k == torus) continue;
    RingTag tag = diag.value[diag.singleton(k)];
    bool weylful = diag.module_weyl[diag.singleton(k)];
    NormalForm nf;
    nf.ring = tag;
    for (auto& [p, sign] : pattern) {
      if (tag.gen_deg == -2) {
        int s = shiftd(rng);
        s -= ((s - p) % 2 + 2) % 2;  // match the parity
        int slot_sign = (((s - p) / 2 % 2) + 2) % 2 != 0 ? -1 : 1;
        int gen_sign = weylful ? sign * slot_sign : 1;
        nf.summands.push_back({SummandKind::Free, s, 1, gen_sign});
      } else {
        // d-ring: the slot sign is determined by the shift class mod 4
        int s = shiftd(rng);
        int want = p + (sign == 1 ? 0 : 2);
        s -= ((s - want) % 4 + 4) % 4;
        nf.summands.push_back({SummandKind::Free, s, 1, 1});
      }
    }
    int nt = ntor(rng);
    for (int j = 0; j < nt; ++j) {
      int s = shiftd(rng);
      nf.summands.push_back({SummandKind::Torsion, s, expd(rng), bit(rng) ? 1 : -1});
    }
    spec.stalks[k] = nf;
  }
  return assemble(diag, level, spec, win);
}

WModule stalk_kernel(const WModule& a, const WModule& b, const std::vector<QMat>& f) {
  WModule k = WModule::zero(a.ring, a.win);
  k.valid = a.valid.intersect(b.valid);
  k.has_weyl = a.has_weyl;
  k.weyl_gen_sign = a.weyl_gen_sign;
  k.unbounded_above = a.unbounded_above;
  k.unbounded_below = a.unbounded_below;
  if (k.has_weyl) k.weyl.assign(a.win.length(), QMat());
  std::vector<QMat> incl(a.win.length());
  for (int t = a.win.lo; t <= a.win.hi; ++t) {
    const QMat& ft = f[t - a.win.lo];
    QMat ker = (int(ft.cols()) == a.dim(t)) ? ft.kernel() : QMat::identity(a.dim(t));
    k.dims[t - a.win.lo] = int(ker.cols());
    incl[t - a.win.lo] = std::move(ker);
  }
  for (int t = a.win.lo; t <= a.win.hi; ++t) {
    if (k.has_weyl) {
      // the action preserves the kernel
      QMat x;
      if (incl[t - a.win.lo].solve(a.weyl_at(t) * incl[t - a.win.lo], x))
        k.weyl[t - a.win.lo] = std::move(x);
      else
        k.weyl[t - a.win.lo] = QMat::identity(k.dims[t - a.win.lo]);
    }
    int u = t + a.ring.gen_deg;
    if (a.ring.rank == 1 && a.win.contains(u)) {
      const QMat& g = a.gen_at(t);
      if (int(g.cols()) == a.dim(t)) {
        QMat x;
        if (incl[u - a.win.lo].solve(g * incl[t - a.win.lo], x)) k.gen[t - a.win.lo] = std::move(x);
      }
    }
  }
  return k;
}

WModule stalk_cokernel(const WModule& a, const WModule& b, const std::vector<QMat>& f) {
  WModule q = WModule::zero(b.ring, b.win);
  q.valid = a.valid.intersect(b.valid);
  q.has_weyl = b.has_weyl;
  q.weyl_gen_sign = b.weyl_gen_sign;
  q.unbounded_above = b.unbounded_above;
  q.unbounded_below = b.unbounded_below;
  if (q.has_weyl) q.weyl.assign(b.win.length(), QMat());
  std::vector<QuotientSpace> quot(b.win.length());
  for (int t = b.win.lo; t <= b.win.hi; ++t) {
    const QMat& ft = f[t - b.win.lo];
    QMat im = (int(ft.rows()) == b.dim(t)) ? ft.image() : QMat(b.dim(t), 0);
    quot[t - b.win.lo] = quotient_by(im, b.dim(t));
    q.dims[t - b.win.lo] = int(quot[t - b.win.lo].proj.rows());
  }
  for (int t = b.win.lo; t <= b.win.hi; ++t) {
    const auto& qt = quot[t - b.win.lo];
    if (q.has_weyl) q.weyl[t - b.win.lo] = qt.proj * b.weyl_at(t) * qt.section;
    int u = t + b.ring.gen_deg;
    if (b.ring.rank == 1 && b.win.contains(u)) {
      const QMat& g = b.gen_at(t);
      if (int(g.cols()) == b.dim(t))
        q.gen[t - b.win.lo] = quot[u - b.win.lo].proj * g * qt.section;
    }
  }
  return q;
}

NormalClosureInstance random_normal_closure_instance(std::mt19937_64& rng, Window win) {
  std::uniform_int_distribution<int> nsum(1, 3), shiftd(-4, 4), bit(0, 1), coeff(-2, 2);
  auto random_normal = [&]() {
    NormalForm nf;
    nf.ring = RingTag::poly(-2);
    nf.has_weyl = true;
    nf.weyl_gen_sign = -1;
    int n = nsum(rng);
    for (int i = 0; i < n; ++i) {
      if (bit(rng)) {
        // extended free generator: positive label
        nf.summands.push_back({SummandKind::Free, 2 * shiftd(rng), 1, 1});
      } else {
        nf.summands.push_back({SummandKind::Laurent, bit(rng), 1, bit(rng) ? 1 : -1});
      }
    }
    return realize(gralg::canonicalize(nf), win);
  };
  NormalClosureInstance inst;
  inst.a = random_normal();
  inst.b = random_normal();
  inst.sum = gralg::direct_sum(inst.a, inst.b);
  // a random equivariant map a -> b
  homalg::StalkHomBasis basis = homalg::stalk_hom_basis(inst.a, inst.b, 0);
  std::vector<QMat> f(win.length());
  for (int t = win.lo; t <= win.hi; ++t) f[t - win.lo] = QMat(inst.b.dim(t), inst.a.dim(t));
  for (auto& elem : basis.elems) {
    Rat c = coeff(rng);
    if (c == 0) continue;
    for (int t = win.lo; t <= win.hi; ++t) {
      if (elem[t - win.lo].rows() == f[t - win.lo].rows() &&
          elem[t - win.lo].cols() == f[t - win.lo].cols())
        f[t - win.lo] = f[t - win.lo] + elem[t - win.lo] * c;
    }
  }
  inst.kernel = stalk_kernel(inst.a, inst.b, f);
  inst.cokernel = stalk_cokernel(inst.a, inst.b, f);
  // a random extension of b by a: twist the generator by gamma: b -> a
  {
    WModule e = gralg::direct_sum(inst.a, inst.b);
    for (int t = win.lo; t <= win.hi; ++t) {
      int u = t + e.ring.gen_deg;
      if (!win.contains(u)) continue;
      QMat gamma(inst.a.dim(u), inst.b.dim(t));
      for (std::size_t i = 0; i < gamma.rows(); ++i)
        for (std::size_t j = 0; j < gamma.cols(); ++j) gamma(i, j) = coeff(rng);
      // average to make the twist equivariant: w gamma = ws gamma w
      QMat wa = inst.a.weyl_at(u), wb = inst.b.weyl_at(t);
      if (int(wa.rows()) == inst.a.dim(u) && int(wb.rows()) == inst.b.dim(t)) {
        QMat twisted = wa * gamma * wb;  // ws = -1 handled by the sign below
        gamma = (gamma + twisted * Rat(-1)) * Rat(1, 2);
      }
      QMat g = e.gen[t - win.lo];
      for (std::size_t i = 0; i < gamma.rows(); ++i)
        for (std::size_t j = 0; j < gamma.cols(); ++j)
          g(i, inst.a.dim(t) + j) += gamma(i, j);
      e.gen[t - win.lo] = std::move(g);
    }
    inst.extension = std::move(e);
  }
  return inst;
}

}  // namespace torcal::corpus
