#include "torcal/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace torcal::gralg {

RingAction RingAction::trivial(int rank) {
  RingAction a;
  a.rank = rank;
  a.matrices = {QMat::identity(rank)};
  return a;
}

RingAction RingAction::sign_rank1() {
  RingAction a;
  a.rank = 1;
  a.matrices = {QMat::identity(1), QMat(1, 1, {Rat(-1)})};
  return a;
}

RingAction RingAction::from_group(const lattice::GroupSpec& spec) {
  RingAction a;
  a.rank = spec.rank;
  for (const auto& w : spec.weyl_elements) {
    QMat m(spec.rank, spec.rank);
    for (int i = 0; i < spec.rank; ++i)
      for (int j = 0; j < spec.rank; ++j) m(i, j) = w[i][j];
    a.matrices.push_back(m.inverse().transpose());
  }
  return a;
}

bool RingAction::closed_under_product() const {
  for (const auto& v : matrices)
    for (const auto& w : matrices) {
      QMat p = v * w;
      if (std::find(matrices.begin(), matrices.end(), p) == matrices.end()) return false;
    }
  return true;
}

PowerSeries molien_series(const RingAction& action, int bound) {
  PowerSeries acc(bound);
  for (const auto& w : action.matrices) {
    // det(1 - t^2 w) for rank <= 2
    PowerSeries det = PowerSeries::one(bound);
    if (action.rank == 1) {
      if (2 <= bound) det[2] = -w(0, 0);
    } else if (action.rank == 2) {
      Rat tr = w(0, 0) + w(1, 1);
      Rat dt = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
      if (2 <= bound) det[2] = -tr;
      if (4 <= bound) det[4] = dt;
    } else if (action.rank != 0) {
      throw std::invalid_argument("molien_series: rank must be <= 2");
    }
    acc = acc + det.inverse();
  }
  return acc * Rat(1, action.order());
}

Poly reynolds(const RingAction& action, const Poly& p) {
  Poly acc(p.nvars());
  for (const auto& w : action.matrices) acc = acc + p.substitute_linear(w);
  return acc * Rat(1, action.order());
}

namespace {

// matrix of p -> p(w x) on the homogeneous degree-m monomial space
QMat action_on_degree(const RingAction& action, const QMat& w, int m) {
  auto monos = monomials_of_degree(action.rank, m);
  QMat s(monos.size(), monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j) {
    Poly p(action.rank);
    p.add_term(monos[j], 1);
    QMat v = poly_to_vec(p.substitute_linear(w), m);
    for (std::size_t i = 0; i < monos.size(); ++i) s(i, j) = v(i, 0);
  }
  return s;
}

QMat twisted_invariant_basis(const RingAction& action, int m, bool det_twist) {
  auto monos = monomials_of_degree(action.rank, m);
  QMat stacked(0, monos.size());
  for (const auto& w : action.matrices) {
    Rat chi(1);
    if (det_twist) {
      chi = action.rank == 1 ? w(0, 0) : w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
    }
    QMat s = action_on_degree(action, w, m) - QMat::scalar(monos.size(), chi);
    stacked = stacked.rows() == 0 ? s : stacked.vstack(s);
  }
  return stacked.kernel();
}

}  // namespace

QMat invariant_basis(const RingAction& action, int codegree) {
  if (codegree % 2 != 0) return QMat(0, 0);
  return twisted_invariant_basis(action, codegree / 2, false);
}

InvariantRing invariants(const RingAction& action, int bound) {
  InvariantRing out;
  out.rank = action.rank;
  out.bound = bound;
  out.hilbert = PowerSeries(std::max(bound, 0));
  if (bound >= 0) out.hilbert[0] = 1;
  if (bound < 2) return out;

  int mmax = bound / 2;
  // subalgebra bases per polynomial degree, grown as generators are found
  std::vector<QMat> sub(mmax + 1);
  sub[0] = QMat(1, 1, {Rat(1)});
  std::vector<Poly> gen_polys;
  std::vector<int> gen_pdeg;

  for (int m = 1; m <= mmax; ++m) {
    auto monos = monomials_of_degree(action.rank, m);
    // span of products (generator of degree a) * (subalgebra element of degree m-a)
    QMat span(monos.size(), 0);
    for (std::size_t gi = 0; gi < gen_polys.size(); ++gi) {
      int a = gen_pdeg[gi];
      if (a > m) continue;
      const QMat& lower = sub[m - a];
      auto lower_monos = monomials_of_degree(action.rank, m - a);
      for (std::size_t c = 0; c < lower.cols(); ++c) {
        Poly q(action.rank);
        for (std::size_t i = 0; i < lower_monos.size(); ++i)
          if (lower(i, c) != 0) q.add_term(lower_monos[i], lower(i, c));
        span = span.hstack(poly_to_vec(gen_polys[gi] * q, m));
      }
    }
    QMat inv = twisted_invariant_basis(action, m, false);
    QMat span_im = span.image();
    // new generators: complete span_im to a basis of inv
    QMat acc = span_im;
    for (std::size_t c = 0; c < inv.cols(); ++c) {
      QMat col(inv.rows(), 1);
      for (std::size_t i = 0; i < inv.rows(); ++i) col(i, 0) = inv(i, c);
      QMat cand = acc.cols() == 0 ? col : acc.hstack(col);
      if (cand.rank() > acc.rank()) {
        acc = cand;
        gen_polys.push_back(vec_to_poly(col, action.rank, m));
        gen_pdeg.push_back(m);
        out.generators.push_back(gen_polys.back());
        out.generator_codegrees.push_back(2 * m);
      }
    }
    sub[m] = acc;
    if (2 * m <= bound) out.hilbert[2 * m] = Rat(int(acc.rank()));
  }
  PowerSeries mol = molien_series(action, bound);
  out.matches_molien = (out.hilbert == mol);
  return out;
}

Poly weyl_skew_polynomial(const lattice::GroupSpec& spec) {
  Poly kappa = Poly::constant(spec.rank, 1);
  for (const auto& dir : spec.positive_root_dirs) {
    std::vector<Rat> coeffs(dir.begin(), dir.end());
    kappa = kappa * Poly::linear(coeffs);
  }
  return kappa;
}

bool solomon_check(const lattice::GroupSpec& spec, int bound) {
  // the action here is on the cocharacter space itself, restricted to the
  // reflection subgroup (the Weyl group of the identity component)
  lattice::WeylSubgroup refl = lattice::weyl_subgroup_generated(spec, spec.reflections);
  RingAction act;
  act.rank = spec.rank;
  for (int wi : refl) {
    const auto& w = spec.weyl_elements[wi];
    QMat m(spec.rank, spec.rank);
    for (int i = 0; i < spec.rank; ++i)
      for (int j = 0; j < spec.rank; ++j) m(i, j) = w[i][j];
    act.matrices.push_back(m);
  }
  Poly kappa = weyl_skew_polynomial(spec);
  // (a) delta * kappa is invariant: w(kappa) = det(w) * kappa
  for (const auto& w : act.matrices) {
    Rat dt = act.rank == 1 ? w(0, 0) : w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
    if (!(kappa.substitute_linear(w) == kappa * dt)) return false;
  }
  // (b) every det-twisted invariant of codegree <= bound is divisible by kappa
  for (int m = 1; 2 * m <= bound; ++m) {
    QMat basis = twisted_invariant_basis(act, m, true);
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      QMat col(basis.rows(), 1);
      for (std::size_t i = 0; i < basis.rows(); ++i) col(i, 0) = basis(i, c);
      Poly p = vec_to_poly(col, act.rank, m);
      Poly q(act.rank);
      if (!p.divide(kappa, q)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<long> canonical_primitive(std::vector<long> v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::abs(x));
  if (g == 0) return v;
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

}  // namespace

EulerSet euler_set(const lattice::SubgroupPoset& poset, const lattice::Flag& flag,
                   long coefficient_budget) {
  EulerSet out;
  if (flag.length() < 1) return out;
  const lattice::ToralSubgroup& k0 = poset.subgroups[flag.top()];
  const lattice::ToralSubgroup& ks = poset.subgroups[flag.bottom()];
  int rank = poset.spec->rank;
  if (rank == 1) {
    // characters of T/K_s form Z; all K_0-essential ones generate the same
    // multiplicative set as the coordinate class
    out.characters.push_back({1});
    return out;
  }
  // rank 2: enumerate characters of T that die on K_s but not on K_0, within
  // a coefficient box (grown until nonempty); keep one representative of
  // minimal size per direction
  for (long budget = coefficient_budget; budget <= 16; budget *= 2) {
    std::map<std::vector<long>, std::vector<long>> by_direction;
    for (long a = -budget; a <= budget; ++a)
      for (long b = -budget; b <= budget; ++b) {
        if (a == 0 && b == 0) continue;
        std::vector<long> alpha = {a, b};
        if (!ks.kills_character(alpha)) continue;
        if (k0.kills_character(alpha)) continue;
        std::vector<long> dir = canonical_primitive(alpha);
        if (alpha[0] * dir[1] - alpha[1] * dir[0] != 0) continue;
        long sz = std::abs(a) + std::abs(b);
        auto it = by_direction.find(dir);
        if (it == by_direction.end() ||
            std::abs(it->second[0]) + std::abs(it->second[1]) > sz) {
          // canonical sign: match the direction
          if ((alpha[0] != 0 && (alpha[0] > 0) != (dir[0] > 0)) ||
              (alpha[0] == 0 && (alpha[1] > 0) != (dir[1] > 0)))
            alpha = {-alpha[0], -alpha[1]};
          by_direction[dir] = alpha;
        }
      }
    if (!by_direction.empty()) {
      for (auto& [dir, alpha] : by_direction) out.characters.push_back(alpha);
      return out;
    }
  }
  return out;
}

}  // namespace torcal::gralg
