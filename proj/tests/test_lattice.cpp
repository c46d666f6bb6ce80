#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coarsekit/lattice.hpp"

using namespace coarsekit;

namespace {

std::shared_ptr<const ShearletGroupSpec> std2(Rational lambda) {
  return std::make_shared<ShearletGroupSpec>(standard_group(2, {lambda}));
}

WordMetricLattice small_lattice(Rational lambda, int levels) {
  auto spec = std2(lambda);
  return build_lattice(spec, default_window(*spec), default_lattice_params(*spec, levels));
}

}  // namespace

TEST_CASE("lattice points carry exact coordinates") {
  auto lat = small_lattice(Rational(1, 2), 3);
  CHECK(lat.size() > 20);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& c = lat.coords()[i];
    const auto& g = lat.points()[i];
    CHECK(g.r == Rational(c.level) * lat.params().delta);
    CHECK(g.t[0].rational_value() == Rational(c.m[0]) * lat.params().sigma[0]);
  }
}

TEST_CASE("edge scan agrees with the brute-force reference") {
  auto spec = std2(Rational(1, 2));
  auto params = default_lattice_params(*spec, 3);
  auto fast = build_lattice(spec, default_window(*spec), params, Exec::parallel, false);
  auto brute = build_lattice(spec, default_window(*spec), params, Exec::serial, true);
  CHECK(fast.adjacency() == brute.adjacency());
  // and for groups with bilinear shear corrections
  auto tsp = std::make_shared<ShearletGroupSpec>(toeplitz_group(3, Rational(1, 3)));
  auto p3 = default_lattice_params(*tsp, 2);
  p3.shear_extent = {3.0, 3.0};
  auto f3 = build_lattice(tsp, default_window(*tsp), p3, Exec::parallel, false);
  auto b3 = build_lattice(tsp, default_window(*tsp), p3, Exec::serial, true);
  CHECK(f3.adjacency() == b3.adjacency());

  auto d4 = std::make_shared<ShearletGroupSpec>(
      d4_family(1, {Rational(1, 2), Rational(1, 2), Rational(0)}));
  auto p4 = default_lattice_params(*d4, 1);
  p4.shear_extent = {1.5, 1.5, 1.5};
  auto f4 = build_lattice(d4, default_window(*d4), p4, Exec::parallel, false);
  auto b4 = build_lattice(d4, default_window(*d4), p4, Exec::serial, true);
  CHECK(f4.adjacency() == b4.adjacency());
}

TEST_CASE("adjacency is symmetric and has no self loops") {
  auto lat = small_lattice(Rational(1, 2), 3);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    for (int j : lat.adjacency()[i]) {
      CHECK(j != static_cast<int>(i));
      const auto& back = lat.adjacency()[j];
      CHECK(std::find(back.begin(), back.end(), static_cast<int>(i)) != back.end());
    }
  }
}

TEST_CASE("pure scaling column: steps of the word metric count scale jumps") {
  // one-parameter scaling subgroup: shear extent below the spacing leaves a
  // single column; with window |r| <= 1 and delta = 1/2, d(e, h(7/2, 0)) = 4
  auto spec = std2(Rational(1));
  WordWindow w;
  w.rho = Rational(1);
  w.shear = {Rational(3, 2)};
  LatticeParams p;
  p.delta = Rational(1, 2);
  p.sigma = {Rational(1)};
  p.levels = 7;
  p.shear_extent = {0.5};  // m = 0 only
  auto lat = build_lattice(spec, w, p, Exec::serial);
  CHECK(lat.size() == 15);
  int e = lat.find({1, 0, {0}});
  int target = lat.find({1, 7, {0}});
  REQUIRE(e >= 0);
  REQUIRE(target >= 0);
  auto dist = lat.distances_from(e);
  CHECK(dist[target] == 4);  // ceil(3.5 / 1) steps
  CHECK(dist[e] == 0);
}

TEST_CASE("left translation by a scale shift preserves distances exactly") {
  auto lat = small_lattice(Rational(1, 2), 4);
  const auto& table = lat.distance_table(Exec::parallel);
  // h = h(delta, 0) maps (k, m) to (k+1, m); pairs well inside the window
  // keep their graph distance
  int checked = 0;
  for (std::size_t i = 0; i < lat.size() && checked < 60; ++i) {
    for (std::size_t j = 0; j < lat.size() && checked < 60; ++j) {
      const auto& ci = lat.coords()[i];
      const auto& cj = lat.coords()[j];
      if (std::abs(ci.level) > 1 || std::abs(cj.level) > 1) continue;
      if (std::labs(ci.m[0]) > 2 || std::labs(cj.m[0]) > 2) continue;
      if (table[i][j] > 3) continue;  // geodesic fits well inside the window
      int i2 = lat.find({ci.eps, ci.level + 1, ci.m});
      int j2 = lat.find({cj.eps, cj.level + 1, cj.m});
      REQUIRE(i2 >= 0);
      REQUIRE(j2 >= 0);
      CHECK(table[i2][j2] == table[i][j]);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("left invariance via exact coordinates: (hx)^{-1}(hy) = x^{-1}y") {
  auto spec = std2(Rational(1, 2));
  auto h = make_element(*spec, 1, Rational(2), {Rational(3, 2)});
  auto x = make_element(*spec, 1, Rational(-1), {Rational(1, 3)});
  auto y = make_element(*spec, 1, Rational(1), {Rational(-2)});
  auto lhs = multiply(*spec, invert(*spec, multiply(*spec, h, x)), multiply(*spec, h, y));
  auto rhs = multiply(*spec, invert(*spec, x), y);
  CHECK(lhs.r == rhs.r);
  CHECK(lhs.t == rhs.t);
}

TEST_CASE("window membership is exact and symmetric") {
  auto spec = std2(Rational(1, 2));
  auto lat = small_lattice(Rational(1, 2), 3);
  auto g = make_element(*spec, 1, Rational(1), {Rational(1)});
  CHECK(lat.in_window_sym(g) == lat.in_window_sym(invert(*spec, g)));
  auto far = make_element(*spec, 1, Rational(10), {Rational(0)});
  CHECK_FALSE(lat.in_window_sym(far));
}

TEST_CASE("lattice validation rejects a window too small for the spacing") {
  auto spec = std2(Rational(1, 2));
  WordWindow tiny;
  tiny.rho = Rational(5, 4);
  tiny.shear = {Rational(1, 8)};  // spacing would exceed the window: rejected
  auto p = default_lattice_params(*spec, 3);
  CHECK_THROWS(build_lattice(spec, tiny, p));
}

TEST_CASE("certified word-metric bounds bracket the lattice BFS distance") {
  auto spec = std2(Rational(1, 2));
  auto lat = small_lattice(Rational(1, 2), 4);
  auto oracle = WordBoundOracle(spec, default_window(*spec));
  auto e = lat.find({1, 0, {0}});
  REQUIRE(e >= 0);
  auto dist = lat.distances_from(e);
  for (std::size_t i = 0; i < lat.size(); i += 7) {
    if (dist[i] == CHAIN_INF) continue;
    GroupElementF g = approx(lat.points()[i]);
    // lower bounds the true word metric, which the graph distance dominates
    CHECK(oracle.lower(g) <= dist[i] + 1e-9);
    CHECK(oracle.lower(g) <= oracle.upper(g) + 1e-9);
  }
}

TEST_CASE("word bounds are exact for the abelian member") {
  auto spec = std2(Rational(1));
  WordWindow w = default_window(*spec);
  auto oracle = WordBoundOracle(spec, w);
  CHECK(oracle.exact());
  GroupElementF g{1, 4.0, {6.0}};
  // max(ceil(4 / 1.25), ceil(6 / 1.5)) = max(4, 4) = 4
  CHECK(oracle.upper(g) == doctest::Approx(4.0));
  CHECK(oracle.lower(g) <= oracle.upper(g));
}

TEST_CASE("induced covering: sets contain their orbit points and volumes scale") {
  auto spec = std2(Rational(1, 2));
  auto lat = small_lattice(Rational(1, 2), 3);
  BaseSet Q = default_orbit_base(*spec);
  Covering cov = induced_covering(lat, Q);
  REQUIRE(cov.size() == lat.size());
  Rational qvol = Q.volume_coeff();
  for (std::size_t i = 0; i < cov.size(); ++i) {
    GroupElementF g = approx(lat.points()[i]);
    CHECK(cov.sets[i].contains(orbit_point_f(*spec, g)));
    // |Q_i| = |det h_i|^{-1} |Q|
    ExpSum want = ExpSum(qvol).div_mono(abs_determinant(*spec, lat.points()[i]));
    CHECK(cov.sets[i].volume().coeff == want);
  }
  auto adm = admissibility_constant(cov);
  CHECK(adm.constant < 40);  // finite overlap on the truncation
}

TEST_CASE("induced covering requires the base to contain xi0") {
  auto spec = std2(Rational(1, 2));
  auto lat = small_lattice(Rational(1, 2), 2);
  auto bad = BaseSet::make_box({Rational(5), Rational(0)}, {Rational(1), Rational(1)});
  CHECK_THROWS_AS((void)induced_covering(lat, bad), std::invalid_argument);
}

TEST_CASE("snap rounds to the nearest lattice coordinates") {
  auto lat = small_lattice(Rational(1, 2), 3);
  GroupElementF g{1, 1.1, {0.4}};
  int idx = lat.snap(g);
  REQUIRE(idx >= 0);
  CHECK(lat.coords()[idx].level == 1);
  CHECK(lat.coords()[idx].m[0] == 0);
}
