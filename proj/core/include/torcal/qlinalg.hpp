#pragma once

#include "torcal/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace torcal {

// Dense matrix over the rationals. Row-major. Everything exact.
class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  QMat(std::size_t rows, std::size_t cols, std::initializer_list<Rat> entries);

  static QMat identity(std::size_t n);
  static QMat zero(std::size_t rows, std::size_t cols) { return QMat(rows, cols); }
  static QMat scalar(std::size_t n, const Rat& s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const QMat& o) const = default;

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator*(const Rat& s) const;
  bool is_zero() const;

  // stack b below/right of *this
  QMat vstack(const QMat& b) const;
  QMat hstack(const QMat& b) const;
  QMat transpose() const;
  // block diagonal with b
  QMat dsum(const QMat& b) const;

  std::size_t rank() const;
  // columns form a basis of ker(*this)
  QMat kernel() const;
  // columns form a basis of the column space
  QMat image() const;
  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }
  QMat inverse() const;
  // one solution x of A x = b, if any
  bool solve(const QMat& b, QMat& x) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(QMat& m);

// dim of the intersection of two column spaces
std::size_t intersection_dim(const QMat& u, const QMat& v);

// quotient of Q^n by the column space of `subspace`, with a chosen section
struct QuotientSpace {
  QMat proj;     // ambient -> quotient coordinates
  QMat section;  // quotient coordinates -> ambient representatives
};
QuotientSpace quotient_by(const QMat& subspace, std::size_t ambient);

// Solve the homogeneous system given by stacking blocks; kept as free helpers
// so callers can assemble constraint systems incrementally.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}
  // add constraint rows: coeff has cols()==unknowns
  void add(const QMat& coeff);
  // add constraint  a*x[i] + b*x[j] == 0  etc. via sparse rows
  void add_row(const std::vector<std::pair<std::size_t, Rat>>& entries);
  std::size_t unknowns() const { return unknowns_; }
  // basis of the solution space (columns)
  QMat solve_kernel() const;

 private:
  std::size_t unknowns_;
  std::vector<Rat> rows_;  // flattened
  std::size_t nrows_ = 0;
};

}  // namespace torcal
