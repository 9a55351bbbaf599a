#include "torcal/qlinalg.hpp"

#include <algorithm>
#include <cassert>

namespace torcal {

QMat::QMat(std::size_t rows, std::size_t cols, std::initializer_list<Rat> entries)
    : rows_(rows), cols_(cols), a_(entries) {
  if (a_.size() != rows * cols) throw std::invalid_argument("QMat: entry count mismatch");
}

QMat QMat::identity(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::scalar(std::size_t n, const Rat& s) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMat*: shape mismatch");
  QMat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rat& bkj = o(k, j);
        if (bkj != 0) r(i, j) += aik * bkj;
      }
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat+: shape mismatch");
  QMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat-: shape mismatch");
  QMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QMat QMat::operator*(const Rat& s) const {
  QMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

bool QMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
}

QMat QMat::vstack(const QMat& b) const {
  if (cols_ != b.cols_) throw std::invalid_argument("vstack: col mismatch");
  QMat r(rows_ + b.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = b(i, j);
  return r;
}

QMat QMat::hstack(const QMat& b) const {
  if (rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
  QMat r(rows_, cols_ + b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) r(i, cols_ + j) = b(i, j);
  }
  return r;
}

QMat QMat::transpose() const {
  QMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

QMat QMat::dsum(const QMat& b) const {
  QMat r(rows_ + b.rows_, cols_ + b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) r(rows_ + i, cols_ + j) = b(i, j);
  return r;
}

std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rat inv = Rat(1) / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t QMat::rank() const {
  QMat m = *this;
  return rref(m).size();
}

QMat QMat::kernel() const {
  QMat m = *this;
  std::vector<std::size_t> piv = rref(m);
  std::vector<bool> is_piv(cols_, false);
  for (auto c : piv) is_piv[c] = true;
  std::size_t nfree = cols_ - piv.size();
  QMat k(cols_, nfree);
  std::size_t fi = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_piv[c]) continue;
    k(c, fi) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], fi) = -m(r, c);
    ++fi;
  }
  return k;
}

QMat QMat::image() const {
  QMat m = *this;
  std::vector<std::size_t> piv = rref(m);
  QMat im(rows_, piv.size());
  for (std::size_t j = 0; j < piv.size(); ++j)
    for (std::size_t i = 0; i < rows_; ++i) im(i, j) = (*this)(i, piv[j]);
  return im;
}

QMat QMat::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
  QMat aug = hstack(identity(rows_));
  std::vector<std::size_t> piv = rref(aug);
  if (piv.size() != rows_) throw std::domain_error("inverse: singular matrix");
  QMat inv(rows_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rows_; ++j) inv(i, j) = aug(i, cols_ + j);
  return inv;
}

bool QMat::solve(const QMat& b, QMat& x) const {
  if (b.rows() != rows_) throw std::invalid_argument("solve: rhs mismatch");
  QMat aug = hstack(b);
  std::vector<std::size_t> piv = rref(aug);
  // inconsistent if a pivot lands in the rhs block
  for (auto c : piv)
    if (c >= cols_) return false;
  x = QMat(cols_, b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, cols_ + j);
  return true;
}

QuotientSpace quotient_by(const QMat& subspace, std::size_t ambient) {
  QMat b = subspace.rows() == 0 && subspace.cols() == 0 ? QMat(ambient, 0) : subspace;
  std::vector<std::size_t> extra;
  QMat acc = b;
  for (std::size_t i = 0; i < ambient; ++i) {
    QMat e(ambient, 1);
    e(i, 0) = 1;
    QMat cand = acc.cols() == 0 ? e : acc.hstack(e);
    if (cand.rank() > acc.rank()) {
      acc = cand;
      extra.push_back(i);
    }
  }
  QuotientSpace out;
  out.section = QMat(ambient, extra.size());
  for (std::size_t j = 0; j < extra.size(); ++j) out.section(extra[j], j) = 1;
  QMat full = b.cols() == 0 ? out.section : b.hstack(out.section);
  out.proj = QMat(extra.size(), ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    QMat e(ambient, 1);
    e(i, 0) = 1;
    QMat x;
    if (!full.solve(e, x)) throw std::logic_error("quotient_by: inconsistent basis");
    for (std::size_t j = 0; j < extra.size(); ++j) out.proj(j, i) = x(b.cols() + j, 0);
  }
  return out;
}

std::size_t intersection_dim(const QMat& u, const QMat& v) {
  if (u.rows() != v.rows()) throw std::invalid_argument("intersection_dim: ambient mismatch");
  if (u.cols() == 0 || v.cols() == 0) return 0;
  // dim(U) + dim(V) - dim(U+V)
  std::size_t du = u.rank(), dv = v.rank();
  return du + dv - u.hstack(v).rank();
}

void LinearSystem::add(const QMat& coeff) {
  if (coeff.cols() != unknowns_) throw std::invalid_argument("LinearSystem: width mismatch");
  for (std::size_t i = 0; i < coeff.rows(); ++i) {
    for (std::size_t j = 0; j < unknowns_; ++j) rows_.push_back(coeff(i, j));
    ++nrows_;
  }
}

void LinearSystem::add_row(const std::vector<std::pair<std::size_t, Rat>>& entries) {
  std::vector<Rat> row(unknowns_);
  for (auto& [j, v] : entries) row.at(j) += v;
  rows_.insert(rows_.end(), row.begin(), row.end());
  ++nrows_;
}

QMat LinearSystem::solve_kernel() const {
  QMat m(nrows_, unknowns_);
  for (std::size_t i = 0; i < nrows_; ++i)
    for (std::size_t j = 0; j < unknowns_; ++j) m(i, j) = rows_[i * unknowns_ + j];
  if (nrows_ == 0) return QMat::identity(unknowns_);
  return m.kernel();
}

}  // namespace torcal
