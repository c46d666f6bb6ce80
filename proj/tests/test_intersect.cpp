#include <doctest.h>

#include "coarsekit/intersect.hpp"
#include "coarsekit/shearlet.hpp"

using namespace coarsekit;

namespace {

CoveringSet interval(Rational lo, Rational hi) {
  RatMatrix T(1, 1);
  T(0, 0) = 1;
  return CoveringSet::affine_image(T, {(lo + hi) / 2},
                                   BaseSet::make_box({Rational(0)}, {(hi - lo) / 2}));
}

CoveringSet box2(double cx, double cy, double hx, double hy) {
  long long den = 100000000;
  return CoveringSet::affine_image(
      RatMatrix::identity(2),
      {rational_reconstruct(cx, den), rational_reconstruct(cy, den)},
      BaseSet::make_box({Rational(0), Rational(0)},
                        {rational_reconstruct(hx, den), rational_reconstruct(hy, den)}));
}

}  // namespace

TEST_CASE("intervals: exact YES with witness and exact NO") {
  auto a = interval(0, 2), b = interval(Rational(3, 2), Rational(7, 2));
  auto res = intersects(a, b);
  CHECK(res.state == TriState::yes);
  REQUIRE(res.witness.has_value());
  CHECK(a.contains(*res.witness));
  CHECK(b.contains(*res.witness));
  CHECK((*res.witness)[0] == doctest::Approx(1.75));

  auto c = interval(3, 5);
  CHECK(intersects(a, c).state == TriState::no);
  // touching open intervals do not intersect
  auto d = interval(2, 4);
  CHECK(intersects(a, d).state == TriState::no);
}

TEST_CASE("self intersection is YES") {
  auto a = box2(0, 0, 1, 1);
  auto res = intersects(a, a);
  CHECK(res.state == TriState::yes);
  REQUIRE(res.witness.has_value());
  CHECK(a.contains(*res.witness));
}

TEST_CASE("2-d boxes: YES carries a witness in both sets") {
  auto a = box2(0, 0, 1, 1), b = box2(1.5, 0, 1, 1);
  auto res = intersects(a, b);
  CHECK(res.state == TriState::yes);
  REQUIRE(res.witness.has_value());
  CHECK(a.contains(*res.witness));
  CHECK(b.contains(*res.witness));
}

TEST_CASE("2-d boxes: certified NO through subdivision") {
  auto a = box2(0, 0, 1, 1), b = box2(3, 3, 1, 1);
  CHECK(intersects(a, b).state == TriState::no);
}

TEST_CASE("symmetry of the verdict for every budget") {
  auto spec = standard_group(2, {Rational(1, 2)});
  auto g1 = make_element(spec, 1, Rational(1), {Rational(1)});
  auto g2 = make_element(spec, 1, Rational(-1), {Rational(-2)});
  auto base = BaseSet::make_box({Rational(1), Rational(0)},
                                {Rational(1, 2), Rational(3, 4)});
  auto p1 = CoveringSet::pullback(to_matrix(spec, g1).transpose(),
                                  to_matrix(spec, invert(spec, g1)).transpose(),
                                  abs_determinant(spec, g1), base);
  auto p2 = CoveringSet::pullback(to_matrix(spec, g2).transpose(),
                                  to_matrix(spec, invert(spec, g2)).transpose(),
                                  abs_determinant(spec, g2), base);
  auto a2 = box2(0.5, 0.5, 0.4, 0.4);
  for (int depth : {0, 2, 6, 12}) {
    IntersectBudget budget;
    budget.depth = depth;
    budget.mc_samples = 256;
    for (auto [x, y] : std::vector<std::pair<const CoveringSet*, const CoveringSet*>>{
             {&p1, &p2}, {&p1, &a2}, {&p2, &a2}}) {
      CHECK(intersects(*x, *y, budget).state == intersects(*y, *x, budget).state);
    }
  }
}

TEST_CASE("budget exhaustion yields INDETERMINATE, never a false NO") {
  // thin sliver nearly touching a box: with zero depth and no samples the
  // oracle must not claim a certified NO
  auto a = box2(0, 0, 1, 1);
  auto b = box2(1.9999, 0, 1, 1);
  IntersectBudget tiny;
  tiny.depth = 0;
  tiny.mc_samples = 1;
  auto res = intersects(a, b, tiny);
  CHECK(res.state != TriState::no);
}

TEST_CASE("dimension mismatch is a usage error") {
  auto a = interval(0, 1);
  auto b = box2(0, 0, 1, 1);
  CHECK_THROWS_AS((void)intersects(a, b), std::invalid_argument);
}
