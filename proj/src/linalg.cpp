#include "coarsekit/linalg.hpp"

#include <algorithm>

namespace coarsekit {

namespace {

// Row echelon with full row reduction; returns pivot columns.
std::vector<std::size_t> reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = reduce(aug);
  if (pivots.size() != n || pivots.back() != n - 1) throw SingularMatrix();
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != i) throw SingularMatrix();
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix a = m;
  std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    Rational inv = 1 / a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return reduce(a).size();
}

std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
  RatMatrix a = m;
  auto pivots = reduce(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> solve(const RatMatrix& m, const std::vector<Rational>& b) {
  if (m.rows() != m.cols() || b.size() != m.rows())
    throw std::invalid_argument("solve shape mismatch");
  std::size_t n = m.rows();
  RatMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = reduce(aug);
  if (pivots.size() != n) throw SingularMatrix();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

std::vector<double> solve(const DMatrix& m, const std::vector<double>& b) {
  if (m.rows() != m.cols() || b.size() != m.rows())
    throw std::invalid_argument("solve shape mismatch");
  std::size_t n = m.rows();
  DMatrix a = m;
  std::vector<double> rhs = b;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    double best = std::fabs(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::fabs(a(i, col)) > best) { best = std::fabs(a(i, col)); p = i; }
    if (best < 1e-300) throw SingularMatrix();
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
      std::swap(rhs[p], rhs[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      double f = a(i, col) / a(col, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      rhs[i] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

std::vector<double> least_squares(const DMatrix& m, const std::vector<double>& b) {
  std::size_t n = m.cols();
  DMatrix ata(n, n);
  std::vector<double> atb(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < m.rows(); ++k) s += m(k, i) * m(k, j);
      ata(i, j) = s;
    }
    double s = 0;
    for (std::size_t k = 0; k < m.rows(); ++k) s += m(k, i) * b[k];
    atb[i] = s;
  }
  // Tikhonov floor keeps near-rank-deficient steps finite.
  for (std::size_t i = 0; i < n; ++i) ata(i, i) += 1e-12;
  return solve(ata, atb);
}

ExpMatrix to_expsum(const RatMatrix& m) {
  ExpMatrix e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = ExpSum(m(i, j));
  return e;
}

DMatrix eval(const ExpMatrix& m) {
  DMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).eval();
  return d;
}

}  // namespace coarsekit
