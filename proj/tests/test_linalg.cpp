#include <doctest.h>

#include "coarsekit/linalg.hpp"

using namespace coarsekit;

namespace {
RatMatrix mat2(long a, long b, long c, long d) {
  RatMatrix m(2, 2);
  m(0, 0) = a; m(0, 1) = b; m(1, 0) = c; m(1, 1) = d;
  return m;
}
}  // namespace

TEST_CASE("exact inverse and determinant") {
  RatMatrix m = mat2(2, 1, 7, 4);
  CHECK(determinant(m) == Rational(1));
  RatMatrix inv = inverse(m);
  CHECK(inv * m == RatMatrix::identity(2));
  CHECK(m * inv == RatMatrix::identity(2));

  RatMatrix frac(3, 3);
  frac(0, 0) = Rational(1, 2); frac(0, 1) = Rational(1, 3); frac(0, 2) = 1;
  frac(1, 0) = 2; frac(1, 1) = Rational(-1, 5); frac(1, 2) = 0;
  frac(2, 0) = 0; frac(2, 1) = 7; frac(2, 2) = Rational(2, 9);
  CHECK(inverse(frac) * frac == RatMatrix::identity(3));

  CHECK_THROWS_AS((void)inverse(mat2(1, 2, 2, 4)), SingularMatrix);
  CHECK(determinant(mat2(1, 2, 2, 4)) == Rational(0));
}

TEST_CASE("rank and kernel") {
  RatMatrix m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  CHECK(rank(m) == 1);
  auto ker = kernel_basis(m);
  CHECK(ker.size() == 2);
  for (const auto& v : ker) {
    Rational dot = 0;
    for (std::size_t j = 0; j < 3; ++j) dot += m(0, j) * v[j];
    CHECK(dot == 0);
  }
}

TEST_CASE("exact solve") {
  RatMatrix m = mat2(2, 1, 7, 4);
  std::vector<Rational> b{Rational(1), Rational(0)};
  auto x = solve(m, b);
  CHECK(m.apply(x) == b);
}

TEST_CASE("numeric solve and least squares") {
  DMatrix m(2, 2);
  m(0, 0) = 2; m(0, 1) = 1; m(1, 0) = 1; m(1, 1) = 3;
  auto x = solve(m, {5.0, 10.0});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(3.0));

  // overdetermined consistent system
  DMatrix a(3, 2);
  a(0, 0) = 1; a(0, 1) = 0;
  a(1, 0) = 0; a(1, 1) = 1;
  a(2, 0) = 1; a(2, 1) = 1;
  auto ls = least_squares(a, {2.0, -1.0, 1.0});
  CHECK(ls[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(ls[1] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("expsum matrices multiply exactly") {
  ExpMatrix a(2, 2), b(2, 2);
  a(0, 0) = ExpSum::exp_term(1, 1);
  a(1, 1) = ExpSum::exp_term(1, -1);
  b(0, 0) = ExpSum::exp_term(1, -1);
  b(1, 1) = ExpSum::exp_term(1, 1);
  CHECK(a * b == to_expsum(RatMatrix::identity(2)));
}
