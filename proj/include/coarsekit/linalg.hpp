#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "coarsekit/expsum.hpp"
#include "coarsekit/rational.hpp"

namespace coarsekit {

/// Minimal dense matrix, instantiated over Rational (exact elimination),
/// ExpSum (exact products) and double (numeric solves).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }

  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix scaled(const T& s) const {
    Matrix c = *this;
    for (auto& x : c.a_) x = x * s;
    return c;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply shape mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T(0))) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using RatMatrix = Matrix<Rational>;
using ExpMatrix = Matrix<ExpSum>;
using DMatrix = Matrix<double>;

struct SingularMatrix : std::runtime_error {
  SingularMatrix() : std::runtime_error("singular matrix") {}
};

/// Exact Gauss-Jordan inverse; throws SingularMatrix.
RatMatrix inverse(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Basis of the right kernel, one column vector per basis element.
std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m);
/// Solve m x = b exactly (square m); throws SingularMatrix.
std::vector<Rational> solve(const RatMatrix& m, const std::vector<Rational>& b);

/// Numeric solve with partial pivoting; throws SingularMatrix on breakdown.
std::vector<double> solve(const DMatrix& m, const std::vector<double>& b);
/// Least-squares solution of an overdetermined system via normal equations.
std::vector<double> least_squares(const DMatrix& m, const std::vector<double>& b);

ExpMatrix to_expsum(const RatMatrix& m);
DMatrix eval(const ExpMatrix& m);

}  // namespace coarsekit
