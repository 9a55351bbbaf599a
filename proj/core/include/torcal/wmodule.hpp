#pragma once

#include "torcal/qlinalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torcal::gralg {

// Internal integer grading: degree = -codegree.  Polynomial generators sit in
// degree -2 (c) or -4 (d); divisible duals sit in degrees >= 0.

struct Window {
  int lo = 0, hi = -1;  // empty by default
  bool empty() const { return hi < lo; }
  bool contains(int t) const { return t >= lo && t <= hi; }
  int length() const { return empty() ? 0 : hi - lo + 1; }
  Window intersect(const Window& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
  Window shifted(int k) const { return {lo + k, hi + k}; }
  Window padded(int k) const { return {lo - k, hi + k}; }
  bool operator==(const Window& o) const = default;
};

// The coefficient rings of the rank-one module lane: Q, Q[u], Q[u, u^-1]
// with deg(u) = -2 or -4.
struct RingTag {
  int rank = 1;        // 0 or 1
  int gen_deg = -2;    // -2 or -4, meaningful when rank == 1
  bool laurent = false;
  bool operator==(const RingTag& o) const = default;
  std::string name() const;

  static RingTag rationals() { return {0, 0, false}; }
  static RingTag poly(int gen_deg) { return {1, gen_deg, false}; }
  static RingTag laurent_ring(int gen_deg) { return {1, gen_deg, true}; }
};

// A graded module over a RingTag ring, materialized on a degree window.
//   dims[t]: dimension of the degree-t part
//   gen[t]:  matrix of u: M_t -> M_{t+gen_deg} (stored when both ends in window)
//   weyl[t]: action of the Weyl involution (order <= 2), semilinear with
//            w u = weyl_gen_sign * u w.
// `valid` marks degrees where the data agrees with the true module;
// unbounded_above/below say whether the module continues past the window.
struct WModule {
  RingTag ring;
  Window win;
  Window valid;
  std::vector<int> dims;
  std::vector<QMat> gen;
  bool has_weyl = false;
  int weyl_gen_sign = 1;
  std::vector<QMat> weyl;
  bool unbounded_above = false;
  bool unbounded_below = false;

  int dim(int t) const { return win.contains(t) ? dims[t - win.lo] : 0; }
  const QMat& gen_at(int t) const;   // valid when win.contains(t) && win.contains(t+gen_deg)
  QMat weyl_at(int t) const;         // identity if no weyl data
  bool zero_on(const Window& w) const;

  static WModule zero(RingTag ring, Window win);
};

// total dimension over the window (throws if unbounded flags are set)
int total_dim(const WModule& m);

WModule direct_sum(const WModule& a, const WModule& b);
WModule shift(const WModule& m, int k);  // Sigma^k
// degreewise dual: (m^dual)_t = (m_{-t})^*; gen/weyl transported
WModule dual(const WModule& m);

// ---------------------------------------------------------------------------
// closed-form summands (rank-one normal form)

enum class SummandKind { Free, Torsion, Divisible, Laurent };

struct Summand {
  SummandKind kind = SummandKind::Free;
  int shift = 0;        // Free/Torsion: top degree; Divisible: socle; Laurent: marked slot
  int torsion_exp = 1;  // Torsion only
  int sign = 1;         // Weyl eigenvalue at the marked slot
  bool operator==(const Summand& o) const = default;
};

struct NormalForm {
  RingTag ring;
  bool has_weyl = false;
  int weyl_gen_sign = 1;
  std::vector<Summand> summands;
  std::string str() const;
};

// canonical order + Laurent shift normalization (adjusting signs)
NormalForm canonicalize(NormalForm nf);

WModule realize(const NormalForm& nf, Window win);

// Recover the normal form from windowed data by interval (persistence)
// decomposition of the generator action, refined by Weyl eigenspaces.
// Contract: every Torsion summand's support lies inside m.valid, tops/socles
// of Free/Divisible summands lie inside m.valid, and the unbounded flags
// truthfully describe the edges.
std::optional<NormalForm> classify(const WModule& m);

// re-materialize a classifiable module on another window
WModule rewindow(const WModule& m, Window win);

// ---------------------------------------------------------------------------
// scalar extension along the ring maps of the theory
//
// supported (src -> dst):  Q -> Q[u] / Q[u,u^-1]          (unit)
//                          Q[d] -> Q[c]-type, d = c^2      (free of rank 2)
//                          R -> R[1/u]                     (localization)
//                          composites of the above
// The result carries the canonical map  unit[t]: M_t -> (dst (x) M)_t  and,
// when the source had a Weyl action (or the target ring twist demands one),
// the induced action.
struct ScalarExtension {
  WModule out;
  std::vector<QMat> unit;  // indexed by src window offset; shapes dim_src(t) x ... (cols=src)
  QMat unit_at(int t, const WModule& src) const;
};

// `dst_weyl`: whether the output should carry a Weyl action; for a sqrt
// extension the c-part is negated (weyl_gen_sign -1).
ScalarExtension extend_scalars(const WModule& m, RingTag dst, bool dst_weyl);

// fixed points of the Weyl action; output ring: invariants of the input ring
// (Q[c] ~> Q[d] when the action negates c).  incl[t]: out_t -> m_t.
struct FixedPoints {
  WModule out;
  std::vector<QMat> incl;
};
FixedPoints fixed_points(const WModule& m);

// is the natural map R (x)_{R^W} M^W -> M a degreewise isomorphism?
struct NormalityReport {
  bool normal = true;
  std::optional<int> witness_degree;
};
NormalityReport is_normal_module(const WModule& m);

// ---------------------------------------------------------------------------
// equivariant module maps
//
// Solve for degreewise maps f_t: A_t -> B_{t+shift} commuting with the
// generator and the Weyl action, subject to pinned values f_{t} * pre = val.
struct MapPin {
  int t = 0;     // source degree
  QMat pre;      // X -> A_t  (columns of X)
  QMat val;      // X -> B_{t+shift}
};

struct SolvedMap {
  bool exists = false;
  std::vector<QMat> f;     // indexed by A.win offset
  std::vector<bool> pinned_unique;  // per degree: solution component determined
  QMat at(int t, const WModule& a) const;
};

SolvedMap solve_equivariant_map(const WModule& a, const WModule& b, int shift,
                                const std::vector<MapPin>& pins);

// dims of the space of degree-t maps A -> B commuting with gen and weyl,
// for t in `degrees`; used as the brute-force Hom oracle.
std::vector<int> hom_dims(const WModule& a, const WModule& b, const std::vector<int>& degrees);

// is the given degreewise map an isomorphism on `w`? (all data must be valid there)
bool is_iso_on(const std::vector<QMat>& f, const WModule& a, const WModule& b, int shift,
               const Window& w, int* witness = nullptr);

}  // namespace torcal::gralg
