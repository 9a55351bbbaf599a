#pragma once

#include "torcal/qlinalg.hpp"
#include "torcal/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace torcal {

// Sparse polynomial in `nvars` (<= 2) commuting variables over Q.
// Exponent vectors are dense little arrays; values nonzero.
class Poly {
 public:
  using Expo = std::vector<int>;  // size nvars, entries >= 0

  explicit Poly(int nvars = 1) : nvars_(nvars) {}
  static Poly zero(int nvars) { return Poly(nvars); }
  static Poly constant(int nvars, const Rat& c);
  static Poly variable(int nvars, int i);
  // linear form a0*x0 + a1*x1 + ...
  static Poly linear(const std::vector<Rat>& coeffs);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Rat>& terms() const { return terms_; }

  void add_term(const Expo& e, const Rat& c);
  Rat coeff(const Expo& e) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  bool operator==(const Poly& o) const = default;

  // total degree (-1 for zero), and homogeneity test
  int degree() const;
  bool is_homogeneous() const;

  // substitute x_i -> sum_j m(j,i) * x_j  (linear change of variables)
  Poly substitute_linear(const QMat& m) const;

  // exact division; returns false if not divisible
  bool divide(const Poly& divisor, Poly& quotient) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Expo, Rat> terms_;
};

// all monomials of the given total degree, lexicographic
std::vector<Poly::Expo> monomials_of_degree(int nvars, int deg);

// coefficient vector of a homogeneous polynomial in the monomial basis of its degree
QMat poly_to_vec(const Poly& p, int deg);
Poly vec_to_poly(const QMat& v, int nvars, int deg);

// Truncated power series over Q in one variable t (used for Molien/Hilbert).
class PowerSeries {
 public:
  PowerSeries() : c_(1) {}
  explicit PowerSeries(int bound) : c_(bound + 1) {}
  static PowerSeries one(int bound);
  int bound() const { return int(c_.size()) - 1; }
  Rat& operator[](int i) { return c_.at(i); }
  const Rat& operator[](int i) const { return c_.at(i); }
  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries operator*(const Rat& s) const;
  // multiplicative inverse; requires c_[0] != 0
  PowerSeries inverse() const;
  bool operator==(const PowerSeries& o) const = default;

 private:
  std::vector<Rat> c_;
};

// expansion of 1 / prod_i (1 - t^{d_i}) up to bound
PowerSeries graded_free_series(const std::vector<int>& degrees, int bound);

}  // namespace torcal
