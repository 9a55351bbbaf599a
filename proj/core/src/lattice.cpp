#include "torcal/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace torcal::lattice {

std::string group_name_str(GroupName g) {
  switch (g) {
    case GroupName::Circle: return "Circle";
    case GroupName::Torus2: return "Torus2";
    case GroupName::O2: return "O2";
    case GroupName::SO3: return "SO3";
    case GroupName::SU3: return "SU3";
  }
  return "?";
}

std::optional<GroupName> parse_group_name(const std::string& s) {
  if (s == "Circle") return GroupName::Circle;
  if (s == "Torus2") return GroupName::Torus2;
  if (s == "O2") return GroupName::O2;
  if (s == "SO3") return GroupName::SO3;
  if (s == "SU3") return GroupName::SU3;
  return std::nullopt;
}

IMat imat_identity(int n) {
  IMat m(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  int n = int(a.size());
  IMat r(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

std::vector<long> imat_apply(const IMat& m, const std::vector<long>& v) {
  int n = int(m.size());
  std::vector<long> r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += m[i][j] * v[j];
  return r;
}

int GroupSpec::weyl_mul(int a, int b) const {
  IMat p = imat_mul(weyl_elements[a], weyl_elements[b]);
  for (int i = 0; i < weyl_order(); ++i)
    if (weyl_elements[i] == p) return i;
  throw std::logic_error("weyl_mul: product not in element list");
}

int GroupSpec::weyl_inv(int a) const {
  for (int i = 0; i < weyl_order(); ++i)
    if (weyl_mul(a, i) == 0) return i;
  throw std::logic_error("weyl_inv: no inverse");
}

namespace {

GroupSpec make_circle() {
  GroupSpec g;
  g.name = GroupName::Circle;
  g.rank = 1;
  g.weyl_elements = {imat_identity(1)};
  g.dim_g = 1;
  g.dim_t = 1;
  return g;
}

GroupSpec make_torus2() {
  GroupSpec g;
  g.name = GroupName::Torus2;
  g.rank = 2;
  g.weyl_elements = {imat_identity(2)};
  g.dim_g = 2;
  g.dim_t = 2;
  return g;
}

GroupSpec make_o2() {
  GroupSpec g;
  g.name = GroupName::O2;
  g.rank = 1;
  g.weyl_elements = {imat_identity(1), {{-1}}};
  // identity component is the torus: no roots, no reflections realized in it
  g.dim_g = 1;
  g.dim_t = 1;
  return g;
}

GroupSpec make_so3() {
  GroupSpec g;
  g.name = GroupName::SO3;
  g.rank = 1;
  g.weyl_elements = {imat_identity(1), {{-1}}};
  g.reflections = {1};
  g.reflection_roots = {{1}};
  g.positive_root_dirs = {{1}};
  g.dim_g = 3;
  g.dim_t = 1;
  return g;
}

GroupSpec make_su3() {
  GroupSpec g;
  g.name = GroupName::SU3;
  g.rank = 2;
  // basis f1 = e1 - e3, f2 = e2 - e3 of the sum-zero cocharacter lattice
  IMat e = imat_identity(2);
  IMat s12 = {{0, 1}, {1, 0}};
  IMat s13 = {{-1, -1}, {0, 1}};
  IMat s23 = {{1, 0}, {-1, -1}};
  IMat c3 = {{-1, -1}, {1, 0}};   // (123)
  IMat c3sq = {{0, 1}, {-1, -1}}; // (132)
  g.weyl_elements = {e, s12, s13, s23, c3, c3sq};
  g.reflections = {1, 2, 3};
  g.reflection_roots = {{1, -1}, {2, 1}, {1, 2}};
  g.positive_root_dirs = {{1, -1}, {1, 0}, {0, 1}};
  g.dim_g = 8;
  g.dim_t = 2;
  return g;
}

}  // namespace

const GroupSpec& GroupSpec::get(GroupName g) {
  static const GroupSpec circle = make_circle();
  static const GroupSpec torus2 = make_torus2();
  static const GroupSpec o2 = make_o2();
  static const GroupSpec so3 = make_so3();
  static const GroupSpec su3 = make_su3();
  switch (g) {
    case GroupName::Circle: return circle;
    case GroupName::Torus2: return torus2;
    case GroupName::O2: return o2;
    case GroupName::SO3: return so3;
    case GroupName::SU3: return su3;
  }
  throw std::invalid_argument("unknown group");
}

// ---------------------------------------------------------------------------
// integer lattice helpers (2x2)

namespace {

long lgcd(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

// column-style Hermite form of the lattice spanned by the given columns:
// [[a, b], [0, d]] with a, d >= 0 and 0 <= b < a when a, d > 0
IMat hnf2(std::vector<std::array<long, 2>> cols) {
  // gcd all bottom entries into a single column by repeated reduction
  while (true) {
    std::size_t pivot = cols.size();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j][1] == 0) continue;
      if (pivot == cols.size() || std::abs(cols[j][1]) < std::abs(cols[pivot][1])) pivot = j;
    }
    if (pivot == cols.size()) { cols.push_back({0, 0}); pivot = cols.size() - 1; }
    bool reduced_all = true;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j == pivot || cols[j][1] == 0) continue;
      long q = cols[j][1] / cols[pivot][1];
      cols[j][0] -= q * cols[pivot][0];
      cols[j][1] -= q * cols[pivot][1];
      if (cols[j][1] != 0) reduced_all = false;
    }
    if (reduced_all) {
      std::swap(cols[0], cols[pivot]);
      break;
    }
  }
  long d = cols[0][1];
  long b = cols[0][0];
  if (d < 0) { d = -d; b = -b; }
  long a = 0;
  for (std::size_t j = 1; j < cols.size(); ++j) a = lgcd(a, cols[j][0]);
  if (d == 0) {
    a = lgcd(a, b);
    b = 0;
  }
  if (a > 0) b = ((b % a) + a) % a;
  return {{a, b}, {0, d}};
}

bool hnf2_contains(const IMat& h, long denom, const Rat& x0, const Rat& x1) {
  // is (x0, x1) in (1/denom) * H Z^2 ?
  Rat y0 = x0 * denom, y1 = x1 * denom;
  // solve H c = y over Z: H = [[a,b],[0,d]]
  long a = h[0][0], b = h[0][1], d = h[1][1];
  if (d == 0) {
    if (y1 != 0) return false;
  } else {
    Rat c1 = y1 / d;
    if (denominator(c1) != 1) return false;
    y0 -= c1 * b;
  }
  if (a == 0) return y0 == 0;
  Rat c0 = y0 / a;
  return denominator(c0) == 1;
}

std::vector<long> primitive_canonical(std::vector<long> v) {
  long g = 0;
  for (long x : v) g = lgcd(g, x);
  if (g == 0) throw std::invalid_argument("zero direction vector");
  for (long& x : v) x /= g;
  for (long x : v) {
    if (x > 0) break;
    if (x < 0) {
      for (long& y : v) y = -y;
      break;
    }
  }
  return v;
}

// primitive character vanishing on v (rank 2)
std::vector<long> perp_character(const std::vector<long>& v) {
  return primitive_canonical({-v[1], v[0]});
}

// complete primitive v to a basis (v, u) of Z^2; returns u
std::vector<long> complement_vector(const std::vector<long>& v) {
  // find (x, y) with v0*y - v1*x = 1
  long v0 = v[0], v1 = v[1];
  // extended gcd
  long old_r = v0, r = v1, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  // old_s*v0 + old_t*v1 = old_r = +-1
  long sign = old_r;  // +-1 since v primitive
  return {-old_t * sign, old_s * sign};
}

}  // namespace

// ---------------------------------------------------------------------------
// ToralSubgroup

ToralSubgroup ToralSubgroup::cyclic(long n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be >= 1");
  ToralSubgroup s;
  s.ambient_rank = 1;
  s.dim = 0;
  s.n = n;
  return s;
}

ToralSubgroup ToralSubgroup::full_torus(int ambient_rank) {
  ToralSubgroup s;
  s.ambient_rank = ambient_rank;
  s.dim = ambient_rank;
  return s;
}

ToralSubgroup ToralSubgroup::circle2(std::vector<long> v, long k) {
  if (k < 1) throw std::invalid_argument("circle2: component count must be >= 1");
  ToralSubgroup s;
  s.ambient_rank = 2;
  s.dim = 1;
  s.v = primitive_canonical(std::move(v));
  s.k = k;
  return s;
}

ToralSubgroup ToralSubgroup::finite2(long m, const IMat& gens_times_m) {
  ToralSubgroup s;
  s.ambient_rank = 2;
  s.dim = 0;
  // lattice generated by the given columns together with m * Z^2
  std::vector<std::array<long, 2>> cols;
  for (std::size_t j = 0; j < gens_times_m[0].size(); ++j)
    cols.push_back({gens_times_m[0][j], gens_times_m[1][j]});
  cols.push_back({m, 0});
  cols.push_back({0, m});
  IMat h = hnf2(cols);
  // minimize the denominator
  long best = m;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool ok = true;
    for (auto& row : h)
      for (long x : row)
        if ((x * d) % m != 0) ok = false;
    if (ok) { best = d; break; }
  }
  if (best != m) {
    IMat h2 = h;
    for (auto& row : h2)
      for (long& x : row) x = x * best / m;
    h = h2;
  }
  s.m = best;
  s.fin = h;
  return s;
}

std::string ToralSubgroup::label() const {
  if (dim == ambient_rank) return "T";
  std::ostringstream os;
  if (ambient_rank == 1) {
    os << "C" << n;
  } else if (dim == 1) {
    os << "S(" << v[0] << "," << v[1] << ")";
    if (k > 1) os << "x" << k;
  } else {
    os << "F" << m << "[" << fin[0][0] << "," << fin[0][1] << ";" << fin[1][1] << "]";
  }
  return os.str();
}

bool ToralSubgroup::operator<(const ToralSubgroup& o) const {
  auto key = [](const ToralSubgroup& s) {
    return std::tuple(s.dim, s.n, s.v, s.k, s.m, s.fin);
  };
  return key(*this) < key(o);
}

ToralSubgroup ToralSubgroup::acted_by(const IMat& w) const {
  if (ambient_rank == 1) return *this;  // +-1 fixes every subgroup of the circle
  if (dim == 2) return *this;
  if (dim == 1) {
    ToralSubgroup s = *this;
    s.v = primitive_canonical(imat_apply(w, v));
    return s;
  }
  std::vector<std::array<long, 2>> cols;
  for (int j = 0; j < 2; ++j) {
    std::vector<long> c = imat_apply(w, {fin[0][j], fin[1][j]});
    cols.push_back({c[0], c[1]});
  }
  cols.push_back({m, 0});
  cols.push_back({0, m});
  ToralSubgroup s = *this;
  s.fin = hnf2(cols);
  return s;
}

bool ToralSubgroup::kills_character(const std::vector<long>& alpha) const {
  if (ambient_rank == 1) {
    if (dim == 1) return alpha[0] == 0;
    return alpha[0] % n == 0;
  }
  if (dim == 2) return alpha[0] == 0 && alpha[1] == 0;
  if (dim == 1) {
    long av = alpha[0] * v[0] + alpha[1] * v[1];
    if (av != 0) return false;
    std::vector<long> u = complement_vector(v);
    long au = alpha[0] * u[0] + alpha[1] * u[1];
    return au % k == 0;
  }
  // finite: alpha must be integral on (1/m) * fin
  for (int j = 0; j < 2; ++j) {
    long p = alpha[0] * fin[0][j] + alpha[1] * fin[1][j];
    if (p % m != 0) return false;
  }
  return true;
}

bool subgroup_leq(const ToralSubgroup& k, const ToralSubgroup& l) {
  if (k.ambient_rank != l.ambient_rank) throw std::invalid_argument("ambient rank mismatch");
  if (l.dim > k.dim) return false;
  if (k.dim == k.ambient_rank) return true;
  if (k.ambient_rank == 1) return l.n != 0 && k.n % l.n == 0 && l.dim == 0;
  if (k.dim == 1) {
    if (l.dim == 1) return l.v == k.v && k.k % l.k == 0;
    // finite l inside circle-with-components k: check generators
    std::vector<long> alpha = perp_character(k.v);
    for (int j = 0; j < 2; ++j) {
      Rat x0 = Rat(l.fin[0][j], l.m), x1 = Rat(l.fin[1][j], l.m);
      Rat pairing = x0 * alpha[0] + x1 * alpha[1];
      if (denominator(Rat(pairing * k.k)) != 1) return false;
    }
    return true;
  }
  // both finite: lattice inclusion (1/lm) L_l <= (1/km) L_k
  for (int j = 0; j < 2; ++j) {
    if (!hnf2_contains(k.fin, k.m, Rat(l.fin[0][j], l.m), Rat(l.fin[1][j], l.m))) return false;
  }
  return true;
}

bool cotoral_leq(const ToralSubgroup& k, const ToralSubgroup& l) {
  if (!subgroup_leq(k, l)) return false;
  if (k.dim == k.ambient_rank) return true;  // quotient of the torus is a torus
  if (k.ambient_rank == 1) return k.n == l.n;
  if (k.dim == 1) {
    if (l.dim == 1) return k.k == l.k;
    // K/L is connected iff L meets every component of K
    std::vector<long> alpha = perp_character(k.v);
    long g = k.k;
    for (int j = 0; j < 2; ++j) {
      Rat p = (Rat(l.fin[0][j], l.m) * alpha[0] + Rat(l.fin[1][j], l.m) * alpha[1]) * k.k;
      // p is an integer since L <= K; reduce mod k
      long pi = numerator(p).convert_to<long>();
      g = lgcd(g, pi % k.k);
    }
    return g == 1 || k.k == 1;
  }
  return k == l;  // finite/finite
}

// ---------------------------------------------------------------------------
// posets

int SubgroupPoset::index_of(const ToralSubgroup& s) const {
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i] == s) return int(i);
  return -1;
}

int SubgroupPoset::torus_index() const {
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i].dim == spec->rank) return int(i);
  throw std::logic_error("poset without full torus");
}

bool SubgroupPoset::leq(int k, int l) const {
  if (k == l) return true;
  return std::find(cotoral_pairs.begin(), cotoral_pairs.end(), std::pair{k, l}) !=
         cotoral_pairs.end();
}

std::vector<int> SubgroupPoset::orbit(int s) const {
  std::set<int> o;
  for (int w = 0; w < spec->weyl_order(); ++w) o.insert(act(w, s));
  return {o.begin(), o.end()};
}

namespace {

SubgroupPoset finish_poset(const GroupSpec& spec, std::vector<ToralSubgroup> subs,
                           TruncationParams trunc) {
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  SubgroupPoset p;
  p.spec = &spec;
  p.truncation = trunc;
  p.subgroups = std::move(subs);
  for (std::size_t k = 0; k < p.subgroups.size(); ++k)
    for (std::size_t l = 0; l < p.subgroups.size(); ++l)
      if (k != l && cotoral_leq(p.subgroups[k], p.subgroups[l]))
        p.cotoral_pairs.emplace_back(int(k), int(l));
  p.weyl.spec = &spec;
  for (int w = 0; w < spec.weyl_order(); ++w) {
    std::vector<int> perm(p.subgroups.size());
    for (std::size_t i = 0; i < p.subgroups.size(); ++i) {
      ToralSubgroup img = p.subgroups[i].acted_by(spec.weyl_elements[w]);
      int j = p.index_of(img);
      if (j < 0) throw std::invalid_argument("subgroup list is not closed under the Weyl action");
      perm[i] = j;
    }
    p.weyl.on_subgroups.push_back(std::move(perm));
  }
  // the Weyl action must preserve the cotoral order
  for (int w = 0; w < spec.weyl_order(); ++w)
    for (auto& [k, l] : p.cotoral_pairs)
      if (!p.leq(p.act(w, k), p.act(w, l)))
        throw std::logic_error("Weyl action does not preserve the cotoral order");
  return p;
}

}  // namespace

SubgroupPoset build_poset(const GroupSpec& spec, const TruncationParams& trunc) {
  if (spec.rank != 1)
    throw std::invalid_argument("truncation-based poset construction requires rank 1");
  if (trunc.N < 1) throw std::invalid_argument("truncation N must be >= 1");
  std::vector<ToralSubgroup> subs;
  for (long n = 1; n <= trunc.N; ++n) subs.push_back(ToralSubgroup::cyclic(n));
  subs.push_back(ToralSubgroup::full_torus(1));
  return finish_poset(spec, std::move(subs), trunc);
}

SubgroupPoset build_poset(const GroupSpec& spec, const std::vector<ToralSubgroup>& user_list) {
  std::vector<ToralSubgroup> subs = user_list;
  subs.push_back(ToralSubgroup::full_torus(spec.rank));
  return finish_poset(spec, std::move(subs), TruncationParams{0});
}

bool Flag::operator<(const Flag& o) const {
  if (terms.size() != o.terms.size()) return terms.size() < o.terms.size();
  return terms < o.terms;
}

std::vector<Flag> enumerate_flags(const SubgroupPoset& poset, int max_len) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  std::vector<Flag> out;
  std::vector<Flag> frontier;
  for (int i = 0; i < int(poset.subgroups.size()); ++i) frontier.push_back(Flag{{i}});
  for (int len = 0; len <= max_len; ++len) {
    std::vector<Flag> next;
    for (auto& f : frontier) {
      out.push_back(f);
      for (int j = 0; j < int(poset.subgroups.size()); ++j)
        if (j != f.terms.back() && poset.leq(f.terms.back(), j)) {
          Flag g = f;
          g.terms.push_back(j);
          next.push_back(g);
        }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool subflag(const Flag& e, const Flag& f) {
  // chains in a poset: term-set inclusion preserves the chain order
  return std::all_of(e.terms.begin(), e.terms.end(), [&](int t) {
    return std::find(f.terms.begin(), f.terms.end(), t) != f.terms.end();
  });
}

Flag act_on_flag(const SubgroupPoset& poset, int w, const Flag& f) {
  Flag g;
  for (int t : f.terms) g.terms.push_back(poset.act(w, t));
  return g;
}

// ---------------------------------------------------------------------------
// transport category

TransportCategory build_transport_category(const SubgroupPoset& poset, int max_flag_len) {
  TransportCategory cat;
  cat.poset = &poset;
  cat.objects = enumerate_flags(poset, max_flag_len);
  for (auto& s : cat.objects)
    for (auto& t : cat.objects) {
      if (!subflag(s, t)) continue;
      for (int w = 0; w < poset.spec->weyl_order(); ++w) {
        TransportMorphism m;
        m.source = s;
        m.incl_target = t;
        m.w = w;
        m.target = act_on_flag(poset, w, t);
        cat.morphisms.push_back(std::move(m));
      }
    }
  return cat;
}

TransportMorphism transport_compose(const SubgroupPoset& poset, const TransportMorphism& m1,
                                    const TransportMorphism& m2) {
  if (!(m1.target == m2.source)) throw std::invalid_argument("transport_compose: endpoint mismatch");
  const GroupSpec& spec = *poset.spec;
  int vinv = spec.weyl_inv(m1.w);
  // (i, v)(j, w) = (i j^{v^{-1}}, v w); j: tau^v -> phi, j^{v^{-1}}: tau -> phi^{v^{-1}}
  TransportMorphism r;
  r.source = m1.source;
  r.incl_target = act_on_flag(poset, vinv, m2.incl_target);
  r.w = spec.weyl_mul(m1.w, m2.w);
  r.target = act_on_flag(poset, r.w, r.incl_target);
  if (!subflag(r.source, r.incl_target))
    throw std::logic_error("transport_compose: composite inclusion invalid");
  return r;
}

// ---------------------------------------------------------------------------
// component structures

WeylSubgroup weyl_subgroup_generated(const GroupSpec& spec, const std::vector<int>& gens) {
  std::set<int> h = {0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(h.begin(), h.end());
    for (int a : cur)
      for (int g : gens) {
        int p = spec.weyl_mul(a, g);
        if (h.insert(p).second) grew = true;
      }
  }
  return {h.begin(), h.end()};
}

bool weyl_subgroup_contains(const WeylSubgroup& h, int elt) {
  return std::binary_search(h.begin(), h.end(), elt);
}

bool weyl_subgroup_normal_in(const GroupSpec& spec, const WeylSubgroup& h, const WeylSubgroup& g) {
  for (int x : g)
    for (int y : h) {
      int c = spec.weyl_mul(spec.weyl_mul(x, y), spec.weyl_inv(x));
      if (!weyl_subgroup_contains(h, c)) return false;
    }
  return true;
}

WeylSubgroup flag_isotropy(const SubgroupPoset& poset, const Flag& f) {
  WeylSubgroup iso;
  for (int w = 0; w < poset.spec->weyl_order(); ++w) {
    bool fixes = true;
    for (int t : f.terms)
      if (poset.act(w, t) != t) fixes = false;
    if (fixes) iso.push_back(w);
  }
  return iso;
}

int ComponentStructure::flag_index(const Flag& f) const {
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i] == f) return int(i);
  return -1;
}

ComponentStructure component_structure(const SubgroupPoset& poset, int max_flag_len,
                                       StructureKind kind, bool on_flag_poset) {
  const GroupSpec& spec = *poset.spec;
  ComponentStructure cs;
  cs.poset = &poset;
  cs.kind = kind;
  cs.on_flag_poset = on_flag_poset;
  cs.flags = enumerate_flags(poset, on_flag_poset ? max_flag_len : 0);
  for (auto& f : cs.flags) {
    WeylSubgroup iso = flag_isotropy(poset, f);
    WeylSubgroup we;
    switch (kind) {
      case StructureKind::Connected:
        we = iso;
        break;
      case StructureKind::Discrete:
        we = {0};
        break;
      case StructureKind::Lie: {
        // reflections whose root dies on the top term generate the identity
        // component of the Weyl group of the flag normalizer
        std::vector<int> gens;
        const ToralSubgroup& top = poset.subgroups[f.top()];
        for (std::size_t r = 0; r < spec.reflections.size(); ++r)
          if (top.kills_character(spec.reflection_roots[r])) gens.push_back(spec.reflections[r]);
        we = weyl_subgroup_generated(spec, gens);
        // W_F^e <= (WG)_F always holds: the generating reflections fix every
        // term of the flag (their root dies on the top, hence on all terms)
        for (int x : we)
          if (!weyl_subgroup_contains(iso, x))
            throw std::logic_error("component structure not contained in isotropy");
        break;
      }
    }
    cs.isotropy.push_back(std::move(iso));
    cs.we.push_back(std::move(we));
  }
  return cs;
}

std::pair<bool, bool> check_structure_flags(const ComponentStructure& cs) {
  const SubgroupPoset& poset = *cs.poset;
  bool decreasing = true;
  auto contained = [&](const WeylSubgroup& a, const WeylSubgroup& b) {
    return std::all_of(a.begin(), a.end(), [&](int x) { return weyl_subgroup_contains(b, x); });
  };
  if (cs.on_flag_poset) {
    for (std::size_t i = 0; i < cs.flags.size(); ++i)
      for (std::size_t j = 0; j < cs.flags.size(); ++j) {
        if (i == j || !subflag(cs.flags[i], cs.flags[j])) continue;
        // map flags[i] -> flags[j]: need W^e(target) <= W^e(source)
        if (!contained(cs.we[j], cs.we[i])) decreasing = false;
      }
  } else {
    for (auto& [k, l] : poset.cotoral_pairs) {
      int fk = cs.flag_index(Flag{{k}}), fl = cs.flag_index(Flag{{l}});
      if (fk < 0 || fl < 0) continue;
      // inflation map k -> l: need W^e(l) <= W^e(k)
      if (!contained(cs.we[fl], cs.we[fk])) decreasing = false;
    }
  }
  bool normal = true;
  for (std::size_t i = 0; i < cs.flags.size(); ++i)
    if (!weyl_subgroup_normal_in(*poset.spec, cs.we[i], cs.isotropy[i])) normal = false;
  return {decreasing, normal};
}

namespace {

// A residual morphism is a class of transport morphisms (i, v).  Acting by
// W^e at the source conjugates the inclusion part, acting by W^e at the
// target translates the group part, so a class is determined by the source,
// the final target, and the set of group parts it contains.
struct ResidualClass {
  Flag source, target;
  std::set<int> reps;
};

}  // namespace

ResidualCheck discrete_residual(const ComponentStructure& cs) {
  auto [dec, normal] = check_structure_flags(cs);
  if (!normal) throw std::domain_error("discrete_residual requires a normal component structure");
  const SubgroupPoset& poset = *cs.poset;
  const GroupSpec& spec = *poset.spec;

  auto we_of = [&](const Flag& f) -> const WeylSubgroup& {
    int i = cs.flag_index(f);
    if (i < 0) throw std::logic_error("flag outside component structure");
    return cs.we[i];
  };
  auto make_class = [&](const Flag& s, const Flag& t, int v) {
    ResidualClass c;
    c.source = s;
    c.target = act_on_flag(poset, v, t);
    for (int a : we_of(s))
      for (int b : we_of(c.target)) c.reps.insert(spec.weyl_mul(spec.weyl_mul(a, v), b));
    return c;
  };
  auto same_class = [&](const ResidualClass& a, const ResidualClass& b) {
    return a.source == b.source && a.target == b.target && a.reps == b.reps;
  };

  std::vector<ResidualClass> classes;
  auto find_or_add = [&](const ResidualClass& c) {
    for (auto& o : classes)
      if (same_class(o, c)) return;
    classes.push_back(c);
  };
  for (auto& s : cs.flags)
    for (auto& t : cs.flags) {
      if (!subflag(s, t)) continue;
      for (int v = 0; v < spec.weyl_order(); ++v) find_or_add(make_class(s, t, v));
    }

  ResidualCheck out;
  out.num_morphisms = int(classes.size());

  // composition well defined: composites of all representative pairs agree
  for (auto& c1 : classes)
    for (auto& c2 : classes) {
      if (!(c1.target == c2.source)) continue;
      std::optional<ResidualClass> expected;
      for (int v1 : c1.reps)
        for (auto& t1 : cs.flags) {
          if (!subflag(c1.source, t1)) continue;
          if (!(act_on_flag(poset, v1, t1) == c1.target)) continue;
          TransportMorphism m1{c1.source, t1, v1, c1.target};
          for (int v2 : c2.reps)
            for (auto& t2 : cs.flags) {
              if (!subflag(c2.source, t2)) continue;
              if (!(act_on_flag(poset, v2, t2) == c2.target)) continue;
              TransportMorphism m2{c2.source, t2, v2, c2.target};
              TransportMorphism comp = transport_compose(poset, m1, m2);
              ResidualClass cc = make_class(comp.source, comp.incl_target, comp.w);
              if (!expected)
                expected = cc;
              else if (!same_class(*expected, cc))
                out.well_defined = false;
            }
        }
    }
  return out;
}

}  // namespace torcal::lattice
