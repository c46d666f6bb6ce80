#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coarsekit/rational.hpp"

namespace coarsekit {

/// Exact scalar of the form sum_k c_k * e^{x_k} with rational c_k, x_k.
///
/// This ring is closed under the coordinate arithmetic of shearlet dilation
/// groups: diagonal scalings contribute monomials e^{r*w}, shear coordinates
/// combine through sums and products, and unipotent inverses are polynomial.
/// Equality is decided term by term, so algebraic identities can be checked
/// with zero residual. Division is only defined by monomials, which is all
/// the group operations ever need.
class ExpSum {
 public:
  ExpSum() = default;
  ExpSum(long long n) { if (n != 0) terms_.push_back({Rational(0), Rational(n)}); }
  explicit ExpSum(const Rational& q) {
    if (q != 0) terms_.push_back({Rational(0), q});
  }
  /// c * e^x
  static ExpSum exp_term(const Rational& c, const Rational& x);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_monomial() const { return terms_.size() == 1; }

  /// Value of a purely rational element; throws otherwise.
  Rational rational_value() const;
  /// Exponent/coefficient of a monomial; throws otherwise.
  const Rational& mono_exponent() const;
  const Rational& mono_coefficient() const;

  ExpSum operator-() const;
  ExpSum& operator+=(const ExpSum& o);
  ExpSum& operator-=(const ExpSum& o);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
  ExpSum& operator*=(const ExpSum& o) { return *this = *this * o; }

  /// Division by a monomial (exact); throws if `m` is not a monomial.
  ExpSum div_mono(const ExpSum& m) const;

  bool operator==(const ExpSum& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExpSum& o) const { return !(*this == o); }

  double eval() const;
  /// log|value| computed stably for large exponents; -inf for zero.
  double log_abs_eval() const;

  /// Sign of the value: exact for rationals and monomials, otherwise decided
  /// numerically (throws if the numeric value is too close to zero to call).
  int sign() const;

  std::size_t term_count() const { return terms_.size(); }
  const std::vector<std::pair<Rational, Rational>>& terms() const { return terms_; }

  std::string str() const;

 private:
  // sorted by exponent, no zero coefficients
  std::vector<std::pair<Rational, Rational>> terms_;
  void normalize();
};

inline ExpSum operator*(const Rational& q, const ExpSum& e) { return ExpSum(q) * e; }

}  // namespace coarsekit
