#include "torcal/wmodule.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace torcal::gralg {

namespace {



int ring_weyl_sign(const RingTag& r) {
  // the Weyl involution negates c (codegree 2) and fixes d (codegree 4)
  return (r.rank == 1 && r.gen_deg == -2) ? -1 : 1;
}

const QMat kEmpty{};

}  // namespace

std::string RingTag::name() const {
  if (rank == 0) return "Q";
  std::string u = gen_deg == -2 ? "c" : "d";
  return laurent ? "Q[" + u + "," + u + "^-1]" : "Q[" + u + "]";
}

const QMat& WModule::gen_at(int t) const {
  if (ring.rank == 0) return kEmpty;
  if (!win.contains(t) || !win.contains(t + ring.gen_deg)) return kEmpty;
  return gen[t - win.lo];
}

QMat WModule::weyl_at(int t) const {
  if (!win.contains(t)) return QMat(0, 0);
  if (!has_weyl) return QMat::identity(dim(t));
  return weyl[t - win.lo];
}

bool WModule::zero_on(const Window& w) const {
  for (int t = w.lo; t <= w.hi; ++t)
    if (dim(t) != 0) return false;
  return true;
}

WModule WModule::zero(RingTag ring, Window win) {
  WModule m;
  m.ring = ring;
  m.win = win;
  m.valid = win;
  m.dims.assign(win.length(), 0);
  m.gen.assign(win.length(), QMat());
  m.weyl_gen_sign = ring_weyl_sign(ring);
  return m;
}

int total_dim(const WModule& m) {
  if (m.unbounded_above || m.unbounded_below)
    throw std::domain_error("total_dim: module is not window-finite");
  int s = 0;
  for (int d : m.dims) s += d;
  return s;
}

WModule direct_sum(const WModule& a, const WModule& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("direct_sum: ring mismatch");
  Window w = a.win.intersect(b.win);
  WModule r = WModule::zero(a.ring, w);
  r.valid = a.valid.intersect(b.valid);
  r.has_weyl = a.has_weyl || b.has_weyl;
  r.weyl_gen_sign = a.weyl_gen_sign;
  r.unbounded_above = a.unbounded_above || b.unbounded_above;
  r.unbounded_below = a.unbounded_below || b.unbounded_below;
  if (r.has_weyl) r.weyl.assign(w.length(), QMat());
  for (int t = w.lo; t <= w.hi; ++t) {
    r.dims[t - w.lo] = a.dim(t) + b.dim(t);
    if (r.has_weyl) r.weyl[t - w.lo] = a.weyl_at(t).dsum(b.weyl_at(t));
  }
  if (r.ring.rank == 1)
    for (int t = w.lo; t <= w.hi; ++t) {
      int u = t + r.ring.gen_deg;
      if (!w.contains(u)) continue;
      QMat ga = a.win.contains(t) && a.win.contains(u) ? a.gen_at(t) : QMat(a.dim(u), a.dim(t));
      QMat gb = b.win.contains(t) && b.win.contains(u) ? b.gen_at(t) : QMat(b.dim(u), b.dim(t));
      // interleave block structure: [A 0; 0 B] with row/col order (a-part, b-part)
      QMat m(a.dim(u) + b.dim(u), a.dim(t) + b.dim(t));
      for (std::size_t i = 0; i < ga.rows(); ++i)
        for (std::size_t j = 0; j < ga.cols(); ++j) m(i, j) = ga(i, j);
      for (std::size_t i = 0; i < gb.rows(); ++i)
        for (std::size_t j = 0; j < gb.cols(); ++j) m(a.dim(u) + i, a.dim(t) + j) = gb(i, j);
      r.gen[t - w.lo] = std::move(m);
    }
  return r;
}

WModule shift(const WModule& m, int k) {
  WModule r = m;
  r.win = m.win.shifted(k);
  r.valid = m.valid.shifted(k);
  return r;
}

WModule dual(const WModule& m) {
  Window w{-m.win.hi, -m.win.lo};
  WModule r = WModule::zero(m.ring, w);
  r.valid = {-m.valid.hi, -m.valid.lo};
  r.has_weyl = m.has_weyl;
  r.weyl_gen_sign = m.weyl_gen_sign;
  r.unbounded_above = m.unbounded_below;
  r.unbounded_below = m.unbounded_above;
  if (r.has_weyl) r.weyl.assign(w.length(), QMat());
  for (int t = w.lo; t <= w.hi; ++t) {
    r.dims[t - w.lo] = m.dim(-t);
    if (r.has_weyl) r.weyl[t - w.lo] = m.weyl_at(-t).transpose();
  }
  if (m.ring.rank == 1) {
    int g = m.ring.gen_deg;
    for (int t = w.lo; t <= w.hi; ++t) {
      if (!w.contains(t + g)) continue;
      const QMat& src = m.gen_at(-t - g);  // M_{-t-g} -> M_{-t}
      if (src.rows() == 0 && src.cols() == 0 && (m.dim(-t) != 0 && m.dim(-t - g) != 0)) continue;
      QMat tr = src.transpose();
      if (int(tr.rows()) == m.dim(-t - g) && int(tr.cols()) == m.dim(-t)) r.gen[t - w.lo] = tr;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// normal forms

std::string NormalForm::str() const {
  std::ostringstream os;
  os << ring.name() << "-module:";
  if (summands.empty()) os << " 0";
  for (auto& s : summands) {
    os << " ";
    switch (s.kind) {
      case SummandKind::Free: os << "F(" << s.shift << ")"; break;
      case SummandKind::Torsion: os << "T(" << s.shift << "," << s.torsion_exp << ")"; break;
      case SummandKind::Divisible: os << "D(" << s.shift << ")"; break;
      case SummandKind::Laurent: os << "L(" << s.shift << ")"; break;
    }
    if (has_weyl) os << (s.sign > 0 ? "+" : "-");
  }
  return os.str();
}

NormalForm canonicalize(NormalForm nf) {
  int G = nf.ring.rank == 1 ? -nf.ring.gen_deg : 0;
  int ws = nf.weyl_gen_sign;
  for (auto& s : nf.summands) {
    if (s.kind != SummandKind::Torsion) s.torsion_exp = 1;
    if (s.kind == SummandKind::Laurent && G > 0) {
      int norm = ((s.shift % G) + G) % G;
      int steps = (s.shift - norm) / G;
      // moving the marked slot down by one generator step multiplies the sign
      if (ws == -1 && (steps % 2 != 0)) s.sign = -s.sign;
      s.shift = norm;
    }
    if (!nf.has_weyl) s.sign = 1;
  }
  auto key = [](const Summand& s) {
    return std::tuple(int(s.kind), s.shift, s.torsion_exp, -s.sign);
  };
  std::sort(nf.summands.begin(), nf.summands.end(),
            [&](const Summand& a, const Summand& b) { return key(a) < key(b); });
  return nf;
}

namespace {

// degrees (descending) on which a summand is supported within [lo, hi]
std::vector<int> summand_support(const Summand& s, int G, const Window& w) {
  std::vector<int> out;
  if (G == 0) {
    if (w.contains(s.shift)) out.push_back(s.shift);
    return out;
  }
  switch (s.kind) {
    case SummandKind::Free:
      for (int t = s.shift; t >= w.lo; t -= G)
        if (t <= w.hi) out.push_back(t);
      break;
    case SummandKind::Torsion:
      for (int j = 0; j < s.torsion_exp; ++j) {
        int t = s.shift - j * G;
        if (w.contains(t)) out.push_back(t);
      }
      break;
    case SummandKind::Divisible:
      for (int t = w.hi - ((w.hi - s.shift) % G + G) % G; t >= s.shift; t -= G)
        if (w.contains(t)) out.push_back(t);
      break;
    case SummandKind::Laurent:
      for (int t = w.hi - ((w.hi - s.shift) % G + G) % G; t >= w.lo; t -= G)
        if (t <= w.hi) out.push_back(t);
      break;
  }
  return out;
}

// does the summand have content outside the window (above / below)?
bool continues_above(const Summand& s, int G, const Window& w) {
  if (G == 0) return false;
  switch (s.kind) {
    case SummandKind::Free:
    case SummandKind::Torsion: return s.shift > w.hi;
    case SummandKind::Divisible:
    case SummandKind::Laurent: return true;
  }
  return false;
}

bool continues_below(const Summand& s, int G, const Window& w) {
  if (G == 0) return false;
  switch (s.kind) {
    case SummandKind::Free:
    case SummandKind::Laurent: return true;
    case SummandKind::Torsion: return s.shift - (s.torsion_exp - 1) * G < w.lo;
    case SummandKind::Divisible: return s.shift < w.lo;
  }
  return false;
}

// Weyl sign of the slot at degree t of summand s (marked slot carries s.sign)
int slot_sign(const Summand& s, int G, int t, int ws) {
  if (G == 0) return s.sign;
  int steps = std::abs(t - s.shift) / G;
  return (ws == -1 && steps % 2 != 0) ? -s.sign : s.sign;
}

}  // namespace

WModule realize(const NormalForm& nf, Window win) {
  int G = nf.ring.rank == 1 ? -nf.ring.gen_deg : 0;
  WModule m = WModule::zero(nf.ring, win);
  m.has_weyl = nf.has_weyl;
  m.weyl_gen_sign = nf.weyl_gen_sign;
  // slot table: per degree, list of (summand index, degree)
  std::map<int, std::vector<std::size_t>> slots;
  for (std::size_t i = 0; i < nf.summands.size(); ++i) {
    const Summand& s = nf.summands[i];
    for (int t : summand_support(s, G, win)) slots[t].push_back(i);
    m.unbounded_above = m.unbounded_above || continues_above(s, G, win);
    m.unbounded_below = m.unbounded_below || continues_below(s, G, win);
  }
  for (auto& [t, v] : slots) {
    std::sort(v.begin(), v.end());
    m.dims[t - win.lo] = int(v.size());
  }
  if (m.has_weyl) {
    m.weyl.assign(win.length(), QMat());
    for (int t = win.lo; t <= win.hi; ++t) {
      auto it = slots.find(t);
      int d = it == slots.end() ? 0 : int(it->second.size());
      QMat w(d, d);
      for (int j = 0; j < d; ++j)
        w(j, j) = slot_sign(nf.summands[it->second[j]], G, t, nf.weyl_gen_sign);
      m.weyl[t - win.lo] = std::move(w);
    }
  }
  if (nf.ring.rank == 1) {
    for (int t = win.lo; t <= win.hi; ++t) {
      int u = t + nf.ring.gen_deg;
      if (!win.contains(u)) continue;
      auto st = slots.find(t), su = slots.find(u);
      int dt = st == slots.end() ? 0 : int(st->second.size());
      int du = su == slots.end() ? 0 : int(su->second.size());
      QMat g(du, dt);
      for (int j = 0; j < dt; ++j) {
        std::size_t si = st->second[j];
        const Summand& s = nf.summands[si];
        bool maps = false;
        switch (s.kind) {
          case SummandKind::Free: case SummandKind::Laurent: maps = true; break;
          case SummandKind::Torsion: maps = u >= s.shift - (s.torsion_exp - 1) * G; break;
          case SummandKind::Divisible: maps = u >= s.shift; break;
        }
        if (!maps) continue;
        for (int i = 0; i < du; ++i)
          if (su->second[i] == si) g(i, j) = 1;
      }
      m.gen[t - win.lo] = std::move(g);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// classification by interval decomposition

namespace {

struct EigenChain {
  // degrees descending within one congruence class
  std::vector<int> deg;
  // bases[i][label]: columns spanning the label-eigenspace of M_{deg[i]}
  // label index: 0 = +1, 1 = -1; without weyl only label 0 with full basis
  std::vector<std::array<QMat, 2>> bases;
};

QMat eigen_basis(const QMat& w, int lambda) {
  QMat a = w - QMat::scalar(w.rows(), lambda);
  return a.kernel();
}

// coordinates of (map * basis_src) in basis_dst; requires containment
bool in_coordinates(const QMat& map, const QMat& basis_src, const QMat& basis_dst, QMat& out) {
  QMat rhs = map * basis_src;
  return basis_dst.solve(rhs, out);
}

}  // namespace

std::optional<NormalForm> classify(const WModule& m) {
  NormalForm nf;
  nf.ring = m.ring;
  nf.has_weyl = m.has_weyl;
  nf.weyl_gen_sign = m.weyl_gen_sign;
  if (m.valid.empty()) return canonicalize(nf);

  if (m.ring.rank == 0) {
    for (int t = m.valid.lo; t <= m.valid.hi; ++t) {
      if (m.dim(t) == 0) continue;
      if (!m.has_weyl) {
        for (int i = 0; i < m.dim(t); ++i)
          nf.summands.push_back({SummandKind::Free, t, 1, 1});
      } else {
        for (int lam : {1, -1}) {
          QMat e = eigen_basis(m.weyl_at(t), lam);
          for (std::size_t i = 0; i < e.cols(); ++i)
            nf.summands.push_back({SummandKind::Free, t, 1, lam});
        }
      }
    }
    return canonicalize(nf);
  }

  const int G = -m.ring.gen_deg;
  const int ws = m.weyl_gen_sign;
  bool cont_above = m.unbounded_above || m.valid.hi != m.win.hi;
  bool cont_below = m.unbounded_below || m.valid.lo != m.win.lo;
  int nlabels = m.has_weyl ? 2 : 1;

  for (int p = 0; p < G; ++p) {
    EigenChain ch;
    for (int t = m.valid.hi; t >= m.valid.lo; --t)
      if (((t % G) + G) % G == ((p % G) + G) % G) ch.deg.push_back(t);
    if (ch.deg.empty()) continue;
    int len = int(ch.deg.size());
    ch.bases.resize(len);
    for (int i = 0; i < len; ++i) {
      if (m.has_weyl) {
        ch.bases[i][0] = eigen_basis(m.weyl_at(ch.deg[i]), 1);
        ch.bases[i][1] = eigen_basis(m.weyl_at(ch.deg[i]), -1);
      } else {
        ch.bases[i][0] = QMat::identity(m.dim(ch.deg[i]));
        ch.bases[i][1] = QMat(m.dim(ch.deg[i]), 0);
      }
    }
    // label index after k generator steps starting from label l0: l0 * ws^k
    auto label_at = [&](int l0, int k) {
      if (!m.has_weyl || ws == 1) return l0;
      return ((k % 2) + 2) % 2 == 0 ? l0 : 1 - l0;
    };
    // r[l][i][j]: rank of the composite deg[i] -> deg[j] on the l-eigenspace at deg[i]
    std::vector<std::vector<std::vector<int>>> r(
        nlabels, std::vector<std::vector<int>>(len, std::vector<int>(len, 0)));
    for (int l = 0; l < nlabels; ++l)
      for (int i = 0; i < len; ++i) {
        QMat cur = ch.bases[i][l];  // ambient coordinates in M_{deg[i]}
        r[l][i][i] = int(cur.rank());
        for (int j = i + 1; j < len; ++j) {
          const QMat& g = m.gen_at(ch.deg[j - 1]);
          if (g.rows() == 0 && g.cols() == 0 && m.dim(ch.deg[j - 1]) * m.dim(ch.deg[j]) != 0)
            return std::nullopt;  // generator data missing inside the valid range
          cur = (m.dim(ch.deg[j - 1]) == 0 || m.dim(ch.deg[j]) == 0)
                    ? QMat(m.dim(ch.deg[j]), cur.cols())
                    : g * cur;
          r[l][i][j] = int(cur.rank());
        }
      }
    // alive(l, i, j) extended past the bottom edge: j == len means "survives
    // below the window" (only continuing summands do, per the flags)
    auto alive = [&](int l, int i, int j) -> int {
      if (j > len) return 0;
      if (j == len) return cont_below ? r[l][i][len - 1] : 0;
      return r[l][i][j];
    };
    for (int l = 0; l < nlabels; ++l) {
      int lam = l == 0 ? 1 : -1;
      // intervals with top exactly deg[i]; the classification contract places
      // no tops at deg[0] when the module continues above the window
      for (int i = 0; i < len; ++i)
        for (int j = i; j <= len; ++j) {
          int A = alive(l, i, j), B = alive(l, i, j + 1);
          int C, D;
          if (i >= 1) {
            C = alive(label_at(l, 1), i - 1, j);
            D = alive(label_at(l, 1), i - 1, j + 1);
          } else {
            C = cont_above ? alive(l, 0, j) : 0;
            D = cont_above ? alive(l, 0, j + 1) : 0;
          }
          int mu = A - B - C + D;
          for (int kcnt = 0; kcnt < mu; ++kcnt) {
            if (j == len)
              nf.summands.push_back({SummandKind::Free, ch.deg[i], 1, lam});
            else
              nf.summands.push_back({SummandKind::Torsion, ch.deg[i], j - i + 1, lam});
          }
        }
      // intervals continuing in from above the window
      if (cont_above) {
        for (int j = 0; j <= len; ++j) {
          int cnt = alive(l, 0, j) - alive(l, 0, j + 1);
          int sgn = label_at(l, std::min(j, len - 1)) == 0 ? 1 : -1;
          for (int kcnt = 0; kcnt < cnt; ++kcnt) {
            if (j == len)
              nf.summands.push_back({SummandKind::Laurent, ch.deg[len - 1], 1, sgn});
            else
              nf.summands.push_back({SummandKind::Divisible, ch.deg[j], 1, sgn});
          }
        }
      }
    }
  }
  return canonicalize(nf);
}

WModule rewindow(const WModule& m, Window win) {
  auto nf = classify(m);
  if (!nf) throw std::domain_error("rewindow: module is not classifiable");
  return realize(*nf, win);
}

// ---------------------------------------------------------------------------
// scalar extension

namespace {

struct Quotient {
  QMat proj;     // ambient -> quotient coords
  QMat section;  // quotient coords -> ambient
};

ScalarExtension identity_extension(const WModule& m, bool dst_weyl) {
  ScalarExtension e;
  e.out = m;
  if (!dst_weyl) {
    e.out.has_weyl = false;
    e.out.weyl.clear();
  } else if (!m.has_weyl) {
    e.out.has_weyl = true;
    e.out.weyl.assign(m.win.length(), QMat());
    for (int t = m.win.lo; t <= m.win.hi; ++t)
      e.out.weyl[t - m.win.lo] = QMat::identity(m.dim(t));
  }
  e.unit.assign(m.win.length(), QMat());
  for (int t = m.win.lo; t <= m.win.hi; ++t) e.unit[t - m.win.lo] = QMat::identity(m.dim(t));
  return e;
}

// Q -> Q[u] or Q[u, u^-1]; m must be window-finite
ScalarExtension unit_extension(const WModule& m, RingTag dst, bool dst_weyl) {
  if (m.unbounded_above || m.unbounded_below)
    throw std::domain_error("unit_extension: source must be window-finite");
  int G = -dst.gen_deg;
  Window w = m.win;
  ScalarExtension e;
  e.out = WModule::zero(dst, w);
  e.out.valid = m.valid;
  e.out.unbounded_below = true;  // frees/laurents continue downward
  e.out.unbounded_above = dst.laurent;
  // slot (j, x): u^j (x) basis x of M_{t + j*G}; j >= 0 for poly, j in Z for laurent
  // per degree t: j ranges over values with t + j*G in [w.lo, w.hi] and (poly) j >= 0
  auto slots_at = [&](int t) {
    std::vector<std::pair<int, int>> out;  // (j, source degree)
    for (int s = w.lo; s <= w.hi; ++s) {
      if (m.dim(s) == 0) continue;
      int diff = s - t;
      if (diff % G != 0) continue;
      int j = diff / G;
      if (!dst.laurent && j < 0) continue;
      out.emplace_back(j, s);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  e.out.has_weyl = dst_weyl;
  if (dst_weyl) e.out.weyl.assign(w.length(), QMat());
  e.unit.assign(w.length(), QMat());
  int ws = ring_weyl_sign(dst);
  std::map<int, std::vector<std::pair<int, int>>> pos;
  for (int t = w.lo; t <= w.hi; ++t) pos[t] = slots_at(t);
  for (int t = w.lo; t <= w.hi; ++t) {
    auto& sl = pos[t];
    int d = 0;
    for (auto& [j, s] : sl) d += m.dim(s);
    e.out.dims[t - w.lo] = d;
    // unit: M_t -> slot (0, t)
    QMat u(d, m.dim(t));
    int off = 0;
    for (auto& [j, s] : sl) {
      if (j == 0) {
        for (int i = 0; i < m.dim(t); ++i) u(off + i, i) = 1;
      }
      off += m.dim(s);
    }
    e.unit[t - w.lo] = std::move(u);
    if (dst_weyl) {
      QMat wy(d, d);
      off = 0;
      for (auto& [j, s] : sl) {
        QMat block = m.has_weyl ? m.weyl_at(s) : QMat::identity(m.dim(s));
        Rat sgn = (ws == -1 && ((j % 2) + 2) % 2 == 1) ? Rat(-1) : Rat(1);
        for (int a = 0; a < m.dim(s); ++a)
          for (int b = 0; b < m.dim(s); ++b) wy(off + a, off + b) = block(a, b) * sgn;
        off += m.dim(s);
      }
      e.out.weyl[t - w.lo] = std::move(wy);
    }
  }
  // generator: slot (j, s) at degree t -> slot (j+1, s) at degree t-G
  for (int t = w.lo; t <= w.hi; ++t) {
    int tg = t - G;
    if (!w.contains(tg)) continue;
    auto& src = pos[t];
    auto& dstl = pos[tg];
    QMat g(e.out.dims[tg - w.lo], e.out.dims[t - w.lo]);
    int co = 0;
    for (auto& [j, s] : src) {
      int ro = 0;
      for (auto& [j2, s2] : dstl) {
        if (j2 == j + 1 && s2 == s)
          for (int i = 0; i < m.dim(s); ++i) g(ro + i, co + i) = 1;
        ro += m.dim(s2);
      }
      co += m.dim(s);
    }
    e.out.gen[t - w.lo] = std::move(g);
  }
  return e;
}

// Q[d] -> Q[c]-type, d = c^2: basis {1, c}
ScalarExtension sqrt_extension(const WModule& m, bool dst_weyl) {
  RingTag dst{1, -2, m.ring.laurent};
  Window w = m.win;
  ScalarExtension e;
  e.out = WModule::zero(dst, w);
  // degree t part: (1 (x) M_t) + (c (x) M_{t+2}); near the top edge M_{t+2}
  // is only known when the source is complete above
  bool complete_above = !m.unbounded_above && m.valid.hi == m.win.hi;
  e.out.valid = {m.valid.lo, complete_above ? m.valid.hi : m.valid.hi - 2};
  e.out.unbounded_above = m.unbounded_above;
  e.out.unbounded_below = m.unbounded_below;
  e.out.has_weyl = dst_weyl;
  if (dst_weyl) e.out.weyl.assign(w.length(), QMat());
  e.unit.assign(w.length(), QMat());
  auto d1 = [&](int t) { return m.dim(t); };
  auto d2 = [&](int t) { return w.contains(t + 2) ? m.dim(t + 2) : 0; };
  for (int t = w.lo; t <= w.hi; ++t) {
    e.out.dims[t - w.lo] = d1(t) + d2(t);
    QMat u(d1(t) + d2(t), m.dim(t));
    for (int i = 0; i < d1(t); ++i) u(i, i) = 1;
    e.unit[t - w.lo] = std::move(u);
    if (dst_weyl) {
      QMat b1 = m.has_weyl ? m.weyl_at(t) : QMat::identity(d1(t));
      QMat b2 = (m.has_weyl && w.contains(t + 2)) ? m.weyl_at(t + 2) : QMat::identity(d2(t));
      e.out.weyl[t - w.lo] = b1.dsum(b2 * Rat(-1));
    }
  }
  // c(1 (x) x) = c (x) x ; c(c (x) y) = 1 (x) d y
  for (int t = w.lo; t <= w.hi; ++t) {
    int tg = t - 2;
    if (!w.contains(tg)) continue;
    QMat g(d1(tg) + d2(tg), d1(t) + d2(t));
    // 1 (x) M_t -> c (x) M_t: identity into the second block of degree t-2 (M_{(t-2)+2} = M_t)
    for (int i = 0; i < d1(t); ++i) g(d1(tg) + i, i) = 1;
    // c (x) M_{t+2} -> 1 (x) d*M_{t+2} in M_{t-2}
    if (d2(t) > 0 && d1(tg) > 0) {
      const QMat& gd = m.gen_at(t + 2);  // M_{t+2} -> M_{t-2}
      if (!(gd.rows() == 0 && gd.cols() == 0))
        for (std::size_t i = 0; i < gd.rows(); ++i)
          for (std::size_t j = 0; j < gd.cols(); ++j) g(i, d1(t) + j) = gd(i, j);
    }
    e.out.gen[t - w.lo] = std::move(g);
  }
  return e;
}

// R -> R[1/u]
ScalarExtension localize_extension(const WModule& m, bool dst_weyl) {
  RingTag dst{1, m.ring.gen_deg, true};
  int G = -m.ring.gen_deg;
  Window w = m.win;
  ScalarExtension e;
  e.out = WModule::zero(dst, w);
  e.unit.assign(w.length(), QMat());
  e.out.has_weyl = dst_weyl;
  if (dst_weyl) e.out.weyl.assign(w.length(), QMat());
  e.out.unbounded_above = true;
  e.out.unbounded_below = true;

  // per congruence class: probe at b_p, E steps above the bottom of valid
  struct ClassData {
    int bp = 0;
    int qdim = 0;
    Quotient q;
    QMat wq;  // induced weyl on the quotient (at level 0 normalization)
    bool present = false;
  };
  std::map<int, ClassData> cls;
  for (int p = 0; p < G; ++p) {
    // Probe at the bottom valid degree of the congruence class.  Under the
    // classification contract no torsion summand reaches the window bottom,
    // so the bottom part is already torsion free and the colimit along the
    // generator is computed exactly with no window loss.
    std::vector<int> deg;
    for (int t = m.valid.hi; t >= m.valid.lo; --t)
      if (((t % G) + G) % G == p) deg.push_back(t);
    if (deg.empty()) continue;
    int bp = deg.back();
    ClassData cd;
    cd.present = true;
    cd.bp = bp;
    cd.q.proj = QMat::identity(m.dim(bp));
    cd.q.section = QMat::identity(m.dim(bp));
    cd.qdim = m.dim(bp);
    if (dst_weyl) {
      QMat wb = m.has_weyl ? m.weyl_at(bp) : QMat::identity(m.dim(bp));
      cd.wq = cd.q.proj * wb * cd.q.section;
    }
    cls[p] = cd;
  }
  e.out.valid = m.valid;

  int ws = ring_weyl_sign(m.ring);
  for (int t = w.lo; t <= w.hi; ++t) {
    int p = ((t % G) + G) % G;
    auto it = cls.find(p);
    if (it == cls.end() || !it->second.present) continue;
    ClassData& cd = it->second;
    e.out.dims[t - w.lo] = cd.qdim;
    // unit: valid only for t in [bp, valid.hi]: project the composite c^{(t-bp)/G}
    if (t >= cd.bp && t <= m.valid.hi) {
      QMat comp = QMat::identity(m.dim(t));
      for (int s = t; s > cd.bp; s -= G) {
        const QMat& g = m.gen_at(s);
        comp = (m.dim(s) == 0 || m.dim(s - G) == 0) ? QMat(m.dim(s - G), comp.cols()) : g * comp;
      }
      e.unit[t - w.lo] = cd.q.proj * comp;
    } else {
      e.unit[t - w.lo] = QMat(cd.qdim, m.dim(t));
    }
    if (dst_weyl) {
      int j = (t - cd.bp) / G;  // may be negative below bp; sign only depends on parity
      Rat sgn = (ws == -1 && ((j % 2) + 2) % 2 == 1) ? Rat(-1) : Rat(1);
      e.out.weyl[t - w.lo] = cd.wq * sgn;
    }
  }
  // generator: identity in the fixed-level coordinates
  for (int t = w.lo; t <= w.hi; ++t) {
    if (!w.contains(t - G)) continue;
    int p = ((t % G) + G) % G;
    auto it = cls.find(p);
    if (it == cls.end()) continue;
    e.out.gen[t - w.lo] = QMat::identity(it->second.qdim);
  }
  return e;
}

ScalarExtension compose_extensions(const WModule& src, ScalarExtension first,
                                   ScalarExtension second) {
  ScalarExtension e;
  e.out = std::move(second.out);
  e.unit.assign(src.win.length(), QMat());
  for (int t = src.win.lo; t <= src.win.hi; ++t) {
    const QMat& u1 = first.unit[t - src.win.lo];
    const QMat& u2 = second.unit[t - first.out.win.lo];
    e.unit[t - src.win.lo] = u2 * u1;
  }
  return e;
}

}  // namespace

QMat ScalarExtension::unit_at(int t, const WModule& src) const {
  if (!src.win.contains(t)) return QMat(out.dim(t), 0);
  return unit[t - src.win.lo];
}

ScalarExtension extend_scalars(const WModule& m, RingTag dst, bool dst_weyl) {
  if (m.ring == dst) return identity_extension(m, dst_weyl);
  if (m.ring.rank == 0) {
    if (dst.rank != 1) throw std::invalid_argument("extend_scalars: unsupported target");
    return unit_extension(m, dst, dst_weyl);
  }
  if (m.ring.rank == 1 && dst.rank == 1) {
    if (m.ring.gen_deg == -4 && dst.gen_deg == -2) {
      ScalarExtension s1 = sqrt_extension(m, dst_weyl);
      if (s1.out.ring == dst) return s1;
      if (dst.laurent && !s1.out.ring.laurent) {
        ScalarExtension s2 = localize_extension(s1.out, dst_weyl);
        return compose_extensions(m, std::move(s1), std::move(s2));
      }
    }
    if (m.ring.gen_deg == dst.gen_deg && dst.laurent && !m.ring.laurent)
      return localize_extension(m, dst_weyl);
  }
  throw std::invalid_argument("extend_scalars: unsupported ring map " + m.ring.name() + " -> " +
                              dst.name());
}

FixedPoints fixed_points(const WModule& m) {
  FixedPoints fp;
  if (!m.has_weyl) {
    fp.out = m;
    fp.incl.assign(m.win.length(), QMat());
    for (int t = m.win.lo; t <= m.win.hi; ++t) fp.incl[t - m.win.lo] = QMat::identity(m.dim(t));
    return fp;
  }
  bool splits_ring = (m.ring.rank == 1 && m.ring.gen_deg == -2);
  RingTag out_ring = m.ring.rank == 0 ? m.ring
                     : splits_ring    ? RingTag{1, -4, m.ring.laurent}
                                      : m.ring;
  fp.out = WModule::zero(out_ring, m.win);
  fp.out.valid = m.valid;
  fp.out.unbounded_above = m.unbounded_above;
  fp.out.unbounded_below = m.unbounded_below;
  fp.incl.assign(m.win.length(), QMat());
  std::vector<QMat> bases(m.win.length());
  for (int t = m.win.lo; t <= m.win.hi; ++t) {
    QMat e = eigen_basis(m.weyl_at(t), 1);
    fp.out.dims[t - m.win.lo] = int(e.cols());
    fp.incl[t - m.win.lo] = e;
    bases[t - m.win.lo] = std::move(e);
  }
  if (m.ring.rank == 1) {
    int steps = splits_ring ? 2 : 1;
    int g_out = out_ring.gen_deg;
    for (int t = m.win.lo; t <= m.win.hi; ++t) {
      int u = t + g_out;
      if (!m.win.contains(u)) continue;
      // composite of `steps` generator actions restricted to invariants
      QMat comp = bases[t - m.win.lo];
      bool ok = true;
      int cur = t;
      for (int s = 0; s < steps; ++s) {
        const QMat& g = m.gen_at(cur);
        if (g.rows() == 0 && g.cols() == 0 && m.dim(cur) * m.dim(cur + m.ring.gen_deg) != 0) {
          ok = false;
          break;
        }
        comp = (m.dim(cur) == 0 || m.dim(cur + m.ring.gen_deg) == 0)
                   ? QMat(m.dim(cur + m.ring.gen_deg), comp.cols())
                   : g * comp;
        cur += m.ring.gen_deg;
      }
      if (!ok) continue;
      QMat x;
      if (!in_coordinates(QMat::identity(m.dim(u)), comp, bases[u - m.win.lo], x))
        throw std::logic_error("fixed_points: invariants not closed under the generator");
      fp.out.gen[t - m.win.lo] = std::move(x);
    }
  }
  return fp;
}

NormalityReport is_normal_module(const WModule& m) {
  NormalityReport rep;
  if (!m.has_weyl) return rep;  // trivial action: R (x)_R M = M
  FixedPoints fp = fixed_points(m);
  ScalarExtension ext = extend_scalars(fp.out, m.ring, true);
  std::vector<MapPin> pins;
  for (int t = fp.out.valid.lo; t <= fp.out.valid.hi; ++t) {
    if (fp.out.dim(t) == 0) continue;
    if (!ext.out.win.contains(t)) continue;
    pins.push_back({t, ext.unit_at(t, fp.out), fp.incl[t - m.win.lo]});
  }
  SolvedMap nu = solve_equivariant_map(ext.out, m, 0, pins);
  if (!nu.exists) {
    rep.normal = false;
    return rep;
  }
  Window w = ext.out.valid.intersect(m.valid);
  // keep away from edges where truncated data cannot decide
  int G = m.ring.rank == 1 ? -m.ring.gen_deg : 1;
  w = {w.lo + G, w.hi - G};
  int witness = 0;
  if (!is_iso_on(nu.f, ext.out, m, 0, w, &witness)) {
    rep.normal = false;
    rep.witness_degree = witness;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// equivariant maps

QMat SolvedMap::at(int t, const WModule& a) const {
  if (!a.win.contains(t)) return QMat(0, 0);
  return f[t - a.win.lo];
}

SolvedMap solve_equivariant_map(const WModule& a, const WModule& b, int shift,
                                const std::vector<MapPin>& pins) {
  SolvedMap sm;
  int n = a.win.length();
  sm.f.assign(n, QMat());
  sm.pinned_unique.assign(n, false);
  auto bdim = [&](int t) { return b.dim(t + shift); };
  int g = a.ring.rank == 1 ? a.ring.gen_deg : 0;

  auto shaped = [](const QMat& m0, int rows2, int cols2) {
    if (int(m0.rows()) == rows2 && int(m0.cols()) == cols2) return m0;
    return QMat(rows2, cols2);
  };
  auto ga_at = [&](int t) {
    return g == 0 || !a.win.contains(t + g) ? QMat(a.dim(t + g), a.dim(t))
                                            : shaped(a.gen_at(t), a.dim(t + g), a.dim(t));
  };
  auto gb_at = [&](int t) {
    bool ok = g != 0 && b.win.contains(t + shift) && b.win.contains(t + shift + g);
    return ok ? shaped(b.gen_at(t + shift), bdim(t + g), bdim(t)) : QMat(bdim(t + g), bdim(t));
  };

  // sandwich constraints L * f_t * R = V accumulated per degree; pins are
  // propagated through the generator chains as constraints so every degree is
  // solved against the full information
  struct Pin3 {
    QMat L, R, V;
  };
  std::vector<std::vector<Pin3>> cons(n);
  for (auto& p : pins) {
    if (!a.win.contains(p.t)) continue;
    cons[p.t - a.win.lo].push_back({QMat::identity(bdim(p.t)), p.pre, p.val});
    if (g == 0) continue;
    // downward: f_{t+kg} (GA^k P) = GB^k V
    {
      QMat P = p.pre, V = p.val;
      for (int t = p.t; a.win.contains(t + g); t += g) {
        P = ga_at(t) * P;
        V = gb_at(t) * V;
        if (P.is_zero()) break;
        cons[t + g - a.win.lo].push_back({QMat::identity(bdim(t + g)), P, V});
      }
    }
    // upward: GB-composite * f_{t-kg} * X = V on the columns with preimages
    {
      QMat C = QMat::identity(a.dim(p.t));
      for (int t = p.t; a.win.contains(t - g); t -= g) {
        int tp = t - g;
        C = C * ga_at(tp);  // A_{tp} -> A_{p.t}
        QMat X(a.dim(tp), 0), V(int(p.val.rows()), 0);
        for (std::size_t c = 0; c < p.pre.cols(); ++c) {
          QMat col(p.pre.rows(), 1), x;
          for (std::size_t r2 = 0; r2 < p.pre.rows(); ++r2) col(r2, 0) = p.pre(r2, c);
          if (!C.solve(col, x)) continue;
          X = X.cols() == 0 ? x : X.hstack(x);
          QMat vcol(p.val.rows(), 1);
          for (std::size_t r2 = 0; r2 < p.val.rows(); ++r2) vcol(r2, 0) = p.val(r2, c);
          V = V.cols() == 0 ? vcol : V.hstack(vcol);
        }
        if (X.cols() == 0) break;
        QMat GBc = QMat::identity(bdim(tp));
        for (int s = tp; s != p.t; s += g) GBc = gb_at(s) * GBc;
        cons[tp - a.win.lo].push_back({GBc, X, V});
      }
    }
  }

  auto try_solve = [&](int t) -> bool {
    int idx = t - a.win.lo;
    int rows = bdim(t), colsn = a.dim(t);
    if (rows == 0 || colsn == 0) {
      sm.f[idx] = QMat(rows, colsn);
      sm.pinned_unique[idx] = true;
      return true;
    }
    std::vector<std::vector<std::pair<std::size_t, Rat>>> eqs;
    std::vector<Rat> rhs;
    auto add_eq = [&](std::vector<std::pair<std::size_t, Rat>> lhs, Rat r) {
      eqs.push_back(std::move(lhs));
      rhs.push_back(std::move(r));
    };
    for (auto& pin : cons[idx]) {
      // L X R = V: rows over (i, k)
      if (int(pin.L.cols()) != rows || int(pin.R.rows()) != colsn) continue;
      for (std::size_t i = 0; i < pin.L.rows(); ++i)
        for (std::size_t k = 0; k < pin.R.cols(); ++k) {
          std::vector<std::pair<std::size_t, Rat>> lhs;
          for (int j = 0; j < rows; ++j) {
            if (pin.L(i, j) == 0) continue;
            for (int l = 0; l < colsn; ++l)
              if (pin.R(l, k) != 0)
                lhs.push_back({std::size_t(j) * colsn + l, pin.L(i, j) * pin.R(l, k)});
          }
          add_eq(std::move(lhs), pin.V(i, k));
        }
    }
    // weyl equivariance
    {
      QMat wa = a.weyl_at(t), wb = b.weyl_at(t + shift);
      bool have = (a.has_weyl || b.has_weyl) && int(wa.rows()) == colsn && int(wb.rows()) == rows;
      if (have) {
        for (int i = 0; i < rows; ++i)
          for (int k = 0; k < colsn; ++k) {
            std::vector<std::pair<std::size_t, Rat>> lhs;
            for (int j = 0; j < rows; ++j)
              if (wb(i, j) != 0) lhs.push_back({std::size_t(j) * colsn + k, wb(i, j)});
            for (int j = 0; j < colsn; ++j)
              if (wa(j, k) != 0) lhs.push_back({std::size_t(i) * colsn + j, -wa(j, k)});
            add_eq(std::move(lhs), Rat(0));
          }
      }
    }
    std::size_t unknowns = std::size_t(rows) * colsn;
    QMat A(eqs.size(), unknowns), Bv(eqs.size(), 1);
    for (std::size_t r2 = 0; r2 < eqs.size(); ++r2) {
      for (auto& [j, v] : eqs[r2]) A(r2, j) += v;
      Bv(r2, 0) = rhs[r2];
    }
    QMat x;
    if (eqs.empty()) {
      x = QMat(unknowns, 1);
    } else if (!A.solve(Bv, x)) {
      return false;
    }
    QMat f(rows, colsn);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < colsn; ++j) f(i, j) = x(std::size_t(i) * colsn + j, 0);
    sm.f[idx] = std::move(f);
    sm.pinned_unique[idx] = eqs.empty() ? unknowns == 0 : A.kernel().cols() == 0;
    return true;
  };

  auto verify = [&]() -> bool {
    for (int t = a.win.lo; t <= a.win.hi; ++t) {
      if (g != 0 && a.win.contains(t + g) && b.win.contains(t + shift) &&
          b.win.contains(t + shift + g)) {
        QMat GA = ga_at(t);
        QMat GB = gb_at(t);
        QMat lhs = sm.f[t + g - a.win.lo] * GA;
        QMat rhs2 = GB * sm.f[t - a.win.lo];
        if (!(lhs == rhs2)) return false;
      }
    }
    for (auto& p : pins) {
      if (!a.win.contains(p.t)) continue;
      if (!(sm.f[p.t - a.win.lo] * p.pre == p.val)) return false;
    }
    return true;
  };

  bool fast_ok = true;
  for (int t = a.win.hi; t >= a.win.lo && fast_ok; --t) fast_ok = try_solve(t);
  if (fast_ok && verify()) {
    sm.exists = true;
    return sm;
  }

  // exact fallback: one affine system per congruence class of degrees
  int G = g == 0 ? 0 : -g;
  for (int p0 = 0; p0 < std::max(G, 1); ++p0) {
    std::vector<int> degs;
    for (int t = a.win.hi; t >= a.win.lo; --t)
      if (G == 0 || ((t % G) + G) % G == p0) degs.push_back(t);
    std::vector<std::size_t> offset(degs.size());
    std::size_t nvars = 0;
    for (std::size_t i = 0; i < degs.size(); ++i) {
      offset[i] = nvars;
      nvars += std::size_t(bdim(degs[i])) * a.dim(degs[i]);
    }
    auto index_of = [&](int t) -> int {
      for (std::size_t i = 0; i < degs.size(); ++i)
        if (degs[i] == t) return int(i);
      return -1;
    };
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    auto var = [&](int di, int i, int j) {
      return offset[di] + std::size_t(i) * a.dim(degs[di]) + j;
    };
    auto add_row = [&](std::vector<std::pair<std::size_t, Rat>> lhs, Rat r) {
      std::vector<Rat> row(nvars);
      for (auto& [k, v] : lhs) row[k] += v;
      rows.push_back(std::move(row));
      rhs.push_back(std::move(r));
    };
    for (std::size_t di = 0; di < degs.size(); ++di) {
      int t = degs[di];
      int rowsn = bdim(t), colsn = a.dim(t);
      // base pins at t
      for (auto& p : pins) {
        if (p.t != t) continue;
        for (int i = 0; i < rowsn; ++i)
          for (std::size_t k = 0; k < p.pre.cols(); ++k) {
            std::vector<std::pair<std::size_t, Rat>> lhs;
            for (int j = 0; j < colsn; ++j)
              if (p.pre(j, k) != 0) lhs.push_back({var(int(di), i, j), p.pre(j, k)});
            add_row(std::move(lhs), p.val(i, k));
          }
      }
      // weyl
      QMat wa = a.weyl_at(t), wb = b.weyl_at(t + shift);
      if ((a.has_weyl || b.has_weyl) && int(wa.rows()) == colsn && int(wb.rows()) == rowsn) {
        for (int i = 0; i < rowsn; ++i)
          for (int k = 0; k < colsn; ++k) {
            std::vector<std::pair<std::size_t, Rat>> lhs;
            for (int j = 0; j < rowsn; ++j)
              if (wb(i, j) != 0) lhs.push_back({var(int(di), j, k), wb(i, j)});
            for (int j = 0; j < colsn; ++j)
              if (wa(j, k) != 0) lhs.push_back({var(int(di), i, j), -wa(j, k)});
            add_row(std::move(lhs), Rat(0));
          }
      }
      // generator square towards t + g
      int dj = index_of(t + g);
      if (g != 0 && dj >= 0) {
        QMat GA = ga_at(t), GB = gb_at(t);
        for (int i = 0; i < bdim(t + g); ++i)
          for (int k = 0; k < colsn; ++k) {
            std::vector<std::pair<std::size_t, Rat>> lhs;
            for (int j = 0; j < a.dim(t + g); ++j)
              if (GA(j, k) != 0) lhs.push_back({var(dj, i, j), GA(j, k)});
            for (int j = 0; j < rowsn; ++j)
              if (GB(i, j) != 0) lhs.push_back({var(int(di), j, k), -GB(i, j)});
            add_row(std::move(lhs), Rat(0));
          }
      }
    }
    QMat A(rows.size(), nvars), Bv(rows.size(), 1);
    for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
      for (std::size_t c = 0; c < nvars; ++c) A(r2, c) = rows[r2][c];
      Bv(r2, 0) = rhs[r2];
    }
    QMat x;
    if (rows.empty()) {
      x = QMat(nvars, 1);
    } else if (!A.solve(Bv, x)) {
      sm.exists = false;
      return sm;
    }
    for (std::size_t di = 0; di < degs.size(); ++di) {
      int t = degs[di];
      QMat f(bdim(t), a.dim(t));
      for (int i = 0; i < bdim(t); ++i)
        for (int j = 0; j < a.dim(t); ++j) f(i, j) = x(var(int(di), i, j), 0);
      sm.f[t - a.win.lo] = std::move(f);
      sm.pinned_unique[t - a.win.lo] = false;
    }
  }
  sm.exists = verify();
  return sm;
}

std::vector<int> hom_dims(const WModule& a, const WModule& b, const std::vector<int>& degrees) {
  std::vector<int> out;
  int g = a.ring.rank == 1 ? a.ring.gen_deg : 0;
  for (int shift : degrees) {
    // unknowns: f_s for s in a.win with a.dim(s), b.dim(s+shift) nonzero
    std::vector<int> offset(a.win.length(), -1);
    std::size_t nvars = 0;
    for (int s = a.win.lo; s <= a.win.hi; ++s) {
      int va = a.dim(s), vb = b.dim(s + shift);
      if (va == 0 || vb == 0) continue;
      offset[s - a.win.lo] = int(nvars);
      nvars += std::size_t(va) * vb;
    }
    LinearSystem sys(nvars);
    auto var = [&](int s, int i, int j) {
      return std::size_t(offset[s - a.win.lo]) + std::size_t(i) * a.dim(s) + j;
    };
    for (int s = a.win.lo; s <= a.win.hi; ++s) {
      // generator: f_{s+g} gen_a(s) - gen_b(s+shift) f_s = 0
      if (g != 0 && a.win.contains(s + g) && b.win.contains(s + shift) &&
          b.win.contains(s + shift + g)) {
        int ra = a.dim(s), rag = a.dim(s + g);
        int rb = b.dim(s + shift), rbg = b.dim(s + shift + g);
        const QMat& ga = a.gen_at(s);
        const QMat& gb = b.gen_at(s + shift);
        for (int i = 0; i < rbg; ++i)
          for (int k = 0; k < ra; ++k) {
            std::vector<std::pair<std::size_t, Rat>> row;
            if (offset[s + g - a.win.lo] >= 0 && rag > 0)
              for (int j = 0; j < rag; ++j)
                if (ga(j, k) != 0) row.push_back({var(s + g, i, j), ga(j, k)});
            if (offset[s - a.win.lo] >= 0 && rb > 0)
              for (int j = 0; j < rb; ++j)
                if (gb(i, j) != 0) row.push_back({var(s, j, k), -gb(i, j)});
            if (!row.empty()) sys.add_row(row);
          }
      }
      // weyl
      if ((a.has_weyl || b.has_weyl) && offset[s - a.win.lo] >= 0) {
        QMat wa = a.weyl_at(s), wb = b.weyl_at(s + shift);
        int ra = a.dim(s), rb = b.dim(s + shift);
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
    out.push_back(int(sys.solve_kernel().cols()));
  }
  return out;
}

bool is_iso_on(const std::vector<QMat>& f, const WModule& a, const WModule& b, int shift,
               const Window& w, int* witness) {
  for (int t = w.lo; t <= w.hi; ++t) {
    if (!a.win.contains(t)) continue;
    const QMat& ft = f[t - a.win.lo];
    int da = a.dim(t), db = b.dim(t + shift);
    if (da != db || (da > 0 && (int(ft.rows()) != db || int(ft.cols()) != da ||
                                ft.rank() != std::size_t(da)))) {
      if (witness) *witness = t;
      return false;
    }
  }
  return true;
}

}  // namespace torcal::gralg
