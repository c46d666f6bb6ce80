#include <doctest.h>

#include <cmath>

#include "coarsekit/expsum.hpp"

using namespace coarsekit;

TEST_CASE("rational parsing and formatting round-trips") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK(format_rational(Rational(-2)) == "-2");
  CHECK(parse_rational(format_rational(Rational(22, 7))) == Rational(22, 7));
}

TEST_CASE("rational reconstruction recovers small fractions") {
  CHECK(rational_reconstruct(0.5, 100) == Rational(1, 2));
  CHECK(rational_reconstruct(-2.0 / 3.0, 100) == Rational(-2, 3));
  CHECK(rational_reconstruct(3.0, 100) == Rational(3));
  CHECK(rational_reconstruct(1.0 / 720.0, 1000) == Rational(1, 720));
}

TEST_CASE("exponential sums: ring operations are exact") {
  ExpSum one(1);
  ExpSum e_half = ExpSum::exp_term(1, Rational(1, 2));
  ExpSum e1 = ExpSum::exp_term(1, 1);

  CHECK(e_half * e_half == e1);
  CHECK((e_half + one) * (e_half - one) == e1 - one);
  CHECK((e_half - e_half).is_zero());
  CHECK(e1.div_mono(e_half) == e_half);

  // geometric factorization (e - 1) = (e^{1/2} - 1)(e^{1/2} + 1)
  CHECK((e1 - one) == (e_half - one) * (e_half + one));
}

TEST_CASE("exponential sums: classification and accessors") {
  ExpSum q(Rational(3, 4));
  CHECK(q.is_rational());
  CHECK(q.rational_value() == Rational(3, 4));
  ExpSum m = ExpSum::exp_term(Rational(-2), Rational(5, 3));
  CHECK(m.is_monomial());
  CHECK_FALSE(m.is_rational());
  CHECK(m.mono_exponent() == Rational(5, 3));
  CHECK(m.mono_coefficient() == Rational(-2));
  CHECK(q.mono_exponent() == Rational(0));  // rationals are exponent-0 monomials
  ExpSum sum = m + q;
  CHECK(sum.term_count() == 2);
  CHECK_THROWS(sum.rational_value());
  CHECK_THROWS(sum.mono_exponent());
  CHECK_THROWS(sum.div_mono(sum));
}

TEST_CASE("exponential sums: numeric evaluation") {
  ExpSum v = ExpSum::exp_term(2, 1) + ExpSum(Rational(-1));
  CHECK(v.eval() == doctest::Approx(2 * std::exp(1.0) - 1));
  CHECK(v.sign() == 1);
  CHECK((-v).sign() == -1);
  CHECK(ExpSum().sign() == 0);
  // large exponents: evaluate in log scale without overflow
  ExpSum big = ExpSum::exp_term(1, 800) + ExpSum::exp_term(5, 700);
  CHECK(big.log_abs_eval() == doctest::Approx(800.0).epsilon(1e-3));
}

TEST_CASE("exponential sums: exact cancellation across construction orders") {
  ExpSum a, b;
  for (int k = 0; k < 10; ++k) a += ExpSum::exp_term(1, Rational(k, 3));
  for (int k = 9; k >= 0; --k) b += ExpSum::exp_term(1, Rational(k, 3));
  CHECK(a == b);
  CHECK((a - b).is_zero());
}
