#include "torcal/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace torcal {

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(Expo(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  Expo e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, 1);
  return p;
}

Poly Poly::linear(const std::vector<Rat>& coeffs) {
  Poly p(int(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Expo e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

void Poly::add_term(const Expo& e, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) {
      Expo e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly Poly::operator*(const Rat& s) const {
  Poly r(nvars_);
  if (s == 0) return r;
  for (auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

int Poly::degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -2;
  for (auto& [e, c] : terms_) {
    int t = std::accumulate(e.begin(), e.end(), 0);
    if (d == -2) d = t;
    if (t != d) return false;
  }
  return true;
}

Poly Poly::substitute_linear(const QMat& m) const {
  if (int(m.rows()) != nvars_ || int(m.cols()) != nvars_)
    throw std::invalid_argument("substitute_linear: matrix must be nvars x nvars");
  std::vector<Poly> images;
  for (int i = 0; i < nvars_; ++i) {
    std::vector<Rat> col(nvars_);
    for (int j = 0; j < nvars_; ++j) col[j] = m(j, i);
    images.push_back(Poly::linear(col));
  }
  Poly r(nvars_);
  for (auto& [e, c] : terms_) {
    Poly term = Poly::constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * images[i];
    r = r + term;
  }
  return r;
}

bool Poly::divide(const Poly& divisor, Poly& quotient) const {
  if (divisor.is_zero()) return false;
  // graded lex division; fine for the correct-by-construction uses here
  auto lead = [](const Poly& p) {
    auto best = p.terms_.begin();
    int bd = std::accumulate(best->first.begin(), best->first.end(), 0);
    for (auto it = p.terms_.begin(); it != p.terms_.end(); ++it) {
      int d = std::accumulate(it->first.begin(), it->first.end(), 0);
      if (d > bd || (d == bd && it->first > best->first)) {
        best = it;
        bd = d;
      }
    }
    return best;
  };
  Poly rem = *this;
  Poly q(nvars_);
  auto dl = lead(divisor);
  int guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 100000) return false;
    auto rl = lead(rem);
    Expo e(nvars_);
    bool ok = true;
    for (int i = 0; i < nvars_; ++i) {
      e[i] = rl->first[i] - dl->first[i];
      if (e[i] < 0) ok = false;
    }
    if (!ok) return false;
    Poly mono(nvars_);
    mono.add_term(e, rl->second / dl->second);
    q = q + mono;
    rem = rem - mono * divisor;
  }
  quotient = q;
  return true;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "*" << names.at(i);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::vector<Poly::Expo> monomials_of_degree(int nvars, int deg) {
  std::vector<Poly::Expo> out;
  if (nvars == 1) {
    out.push_back({deg});
  } else if (nvars == 2) {
    for (int a = deg; a >= 0; --a) out.push_back({a, deg - a});
  } else if (nvars == 0) {
    if (deg == 0) out.push_back({});
  } else {
    throw std::invalid_argument("monomials_of_degree: nvars must be <= 2");
  }
  return out;
}

QMat poly_to_vec(const Poly& p, int deg) {
  auto monos = monomials_of_degree(p.nvars(), deg);
  QMat v(monos.size(), 1);
  for (std::size_t i = 0; i < monos.size(); ++i) v(i, 0) = p.coeff(monos[i]);
  return v;
}

Poly vec_to_poly(const QMat& v, int nvars, int deg) {
  auto monos = monomials_of_degree(nvars, deg);
  Poly p(nvars);
  for (std::size_t i = 0; i < monos.size(); ++i) p.add_term(monos[i], v(i, 0));
  return p;
}

PowerSeries PowerSeries::one(int bound) {
  PowerSeries s(bound);
  s[0] = 1;
  return s;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  PowerSeries r(std::min(bound(), o.bound()));
  for (int i = 0; i <= r.bound(); ++i) r[i] = c_[i] + o[i];
  return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  PowerSeries r(std::min(bound(), o.bound()));
  for (int i = 0; i <= r.bound(); ++i)
    for (int j = 0; j <= i; ++j) r[i] += c_[j] * o[i - j];
  return r;
}

PowerSeries PowerSeries::operator*(const Rat& s) const {
  PowerSeries r(bound());
  for (int i = 0; i <= bound(); ++i) r[i] = c_[i] * s;
  return r;
}

PowerSeries PowerSeries::inverse() const {
  if (c_[0] == 0) throw std::domain_error("PowerSeries::inverse: zero constant term");
  PowerSeries r(bound());
  r[0] = Rat(1) / c_[0];
  for (int i = 1; i <= bound(); ++i) {
    Rat acc(0);
    for (int j = 1; j <= i; ++j) acc += c_[j] * r[i - j];
    r[i] = -acc / c_[0];
  }
  return r;
}

PowerSeries graded_free_series(const std::vector<int>& degrees, int bound) {
  PowerSeries r = PowerSeries::one(bound);
  for (int d : degrees) {
    PowerSeries f = PowerSeries::one(bound);
    if (d <= bound) f[d] = -1;
    r = r * f.inverse();
  }
  return r;
}

}  // namespace torcal
