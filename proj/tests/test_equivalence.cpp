#include <doctest.h>

#include <cmath>

#include "coarsekit/equivalence.hpp"

using namespace coarsekit;

namespace {

// the conjugated Toeplitz shearing group in dimension 4: S2 = C^{-1} S1 C for
// C = I + E_{23}, computed once by hand; its canonical structure constants
// differ from the Toeplitz ones (X2^2 = X3 - 2 X4)
ShearletGroupSpec conjugated_toeplitz_d4() {
  std::size_t n = 3;
  std::vector structure(n, std::vector(n, std::vector<Rational>(n, Rational(0))));
  structure[0][0][1] = 1;   // X2^2 = X3 ...
  structure[0][0][2] = -2;  // ... - 2 X4
  structure[0][1][2] = 1;   // X2 X3 = X4
  structure[1][0][2] = 1;
  return custom_group({Rational(1), Rational(1), Rational(1)}, structure);
}

RatMatrix hand_conjugator() {
  RatMatrix C = RatMatrix::identity(4);
  C(1, 2) = 1;  // I + E_{23}
  return C;
}

}  // namespace

TEST_CASE("dual orbits") {
  auto s = standard_group(3, {Rational(1, 2), Rational(1, 3)});
  CHECK(dual_orbit(s).kind == OrbitDescriptor::Kind::halfline_product);
  CHECK(dual_orbit(s).dim == 3);

  Builtin2D diag{Builtin2D::Which::diagonal, Rational(0)};
  Builtin2D simi{Builtin2D::Which::similitude, Rational(0)};
  Builtin2D shear{Builtin2D::Which::shearlet, Rational(1, 2)};
  CHECK(dual_orbit(diag).kind == OrbitDescriptor::Kind::orthant_union);
  CHECK(dual_orbit(simi).kind == OrbitDescriptor::Kind::punctured_space);
  CHECK(dual_orbit(shear).kind == OrbitDescriptor::Kind::halfline_product);
  CHECK(orbits_equal(dual_orbit(diag), dual_orbit(diag)));
  CHECK_FALSE(orbits_equal(dual_orbit(diag), dual_orbit(simi)));
}

TEST_CASE("algebra invariants separate the corpus") {
  auto std4 = standard_group(4, {Rational(3, 4), Rational(1, 2), Rational(1, 4)});
  auto toe4 = toeplitz_group(4, Rational(1, 4));
  auto inv_s = algebra_invariants(std4);
  auto inv_t = algebra_invariants(toe4);
  CHECK(inv_s.power_dims.empty());  // all products vanish: dim s^2 = 0
  CHECK(inv_t.power_dims == std::vector<std::size_t>{2, 1});
  CHECK(inv_s.annihilator_dim == 3);
  CHECK(inv_t.annihilator_dim == 1);
  CHECK_FALSE(inv_s == inv_t);

  // d4 family: the square form distinguishes alpha = -1, 0, 1 pairwise
  auto a0 = algebra_invariants(d4_family(0, {Rational(1, 2), Rational(3, 4), Rational(0)}));
  auto a1 = algebra_invariants(d4_family(1, {Rational(1, 2), Rational(1, 2), Rational(0)}));
  auto am = algebra_invariants(d4_family(-1, {Rational(1, 2), Rational(1, 2), Rational(0)}));
  CHECK(a0.power_dims == std::vector<std::size_t>{1});
  CHECK(a1.power_dims == std::vector<std::size_t>{1});
  REQUIRE(a1.square_form.has_value());
  REQUIRE(am.square_form.has_value());
  REQUIRE(a0.square_form.has_value());
  CHECK(a0.square_form->first == 1);   // rank 1
  CHECK(a1.square_form->first == 2);   // rank 2, definite
  CHECK(a1.square_form->second == 2);
  CHECK(am.square_form->first == 2);   // rank 2, indefinite
  CHECK(am.square_form->second == 0);
  CHECK_FALSE(a0 == a1);
  CHECK_FALSE(a0 == am);
  CHECK_FALSE(a1 == am);
  CHECK(a0.annihilator_dim == 2);
  CHECK(a1.annihilator_dim == 1);
}

TEST_CASE("find_conjugator: identity for equal specs") {
  auto t = toeplitz_group(4, Rational(0));
  auto res = find_conjugator(t, t);
  REQUIRE(res.status == ConjugatorResult::Status::found);
  CHECK(res.conjugators.front() == RatMatrix::identity(4));
}

TEST_CASE("find_conjugator: certified NOT-FOUND on invariant mismatch") {
  auto std4 = standard_group(4, {Rational(1), Rational(1), Rational(1)});
  auto toe4 = toeplitz_group(4, Rational(0));
  auto res = find_conjugator(std4, toe4);
  CHECK(res.status == ConjugatorResult::Status::not_found);
  CHECK(res.certificate.find("invariant") != std::string::npos);

  auto a0 = d4_family(0, {Rational(1), Rational(1), Rational(1)});
  auto a1 = d4_family(1, {Rational(1), Rational(1), Rational(1)});
  CHECK(find_conjugator(a0, a1).status == ConjugatorResult::Status::not_found);
}

TEST_CASE("find_conjugator: recovers a conjugator for the conjugated Toeplitz pair") {
  auto s1 = toeplitz_group(4, Rational(0));
  auto s2 = conjugated_toeplitz_d4();
  auto res = find_conjugator(s1, s2);
  REQUIRE(res.status == ConjugatorResult::Status::found);
  // every reported conjugator is exactly verified
  for (const auto& C : res.conjugators) {
    auto iso = verify_conjugator(C, s1, s2);
    REQUIRE(iso.has_value());
  }
  // the hand conjugator I + E_{23} verifies as well
  auto iso = verify_conjugator(hand_conjugator(), s1, s2);
  REQUIRE(iso.has_value());
  // X2 -> X2' + X3'
  CHECK((*iso)(0, 0) == 1);
  CHECK((*iso)(1, 0) == 1);
  CHECK((*iso)(2, 0) == 0);
}

TEST_CASE("verify_conjugator rejects matrices that do not conjugate") {
  auto s1 = toeplitz_group(4, Rational(0));
  auto s2 = conjugated_toeplitz_d4();
  CHECK_FALSE(verify_conjugator(RatMatrix::identity(4), s1, s2).has_value());
  RatMatrix junk = RatMatrix::identity(4);
  junk(3, 0) = 1;
  CHECK_FALSE(verify_conjugator(junk, s1, s2).has_value());
}

TEST_CASE("commuting check: identity and isotropic scaling always commute") {
  auto t = toeplitz_group(4, Rational(0));  // isotropic: Y = I
  CHECK(commuting_check(RatMatrix::identity(4), t, t));
  auto s2 = conjugated_toeplitz_d4();
  CHECK(commuting_check(hand_conjugator(), t, s2));
}

TEST_CASE("commuting check fails for a weight-mixing conjugator") {
  // two copies of the standard d=3 group with distinct lambda weights; the
  // basis swap X2 <-> X3 conjugates the (abelian) algebra but mixes
  // ad-weights (1 - lambda_2) != (1 - lambda_3)
  auto s = standard_group(3, {Rational(1, 2), Rational(1, 4)});
  RatMatrix C(3, 3);
  C(0, 0) = 1;
  C(1, 2) = 1;
  C(2, 1) = 1;  // swaps e2, e3
  auto iso = verify_conjugator(C, s, s);
  REQUIRE(iso.has_value());  // conjugates S into S (products are all zero)
  CHECK_FALSE(commuting_check(C, s, s));
}

TEST_CASE("coorbit equivalence: distinct 2-d shearlet members differ by diagonal") {
  auto sa = standard_group(2, {Rational(1, 2)});
  auto sb = standard_group(2, {Rational(2, 3)});
  auto v = coorbit_equivalent(sa, sb);
  CHECK(v.result == EquivalenceVerdict::Result::not_equivalent);
  CHECK(v.reason == EquivalenceVerdict::Reason::diagonal_mismatch);
  // symmetric in the arguments
  auto w = coorbit_equivalent(sb, sa);
  CHECK(w.result == v.result);
  CHECK(w.reason == v.reason);
}

TEST_CASE("coorbit equivalence: standard vs Toeplitz at equal diagonals") {
  for (std::size_t d : {3u, 4u}) {
    Rational delta(1, static_cast<long>(d));
    auto toe = toeplitz_group(d, delta);
    auto std_same = standard_group(d, toe.lambda);
    auto v = coorbit_equivalent(std_same, toe);
    CHECK(v.result == EquivalenceVerdict::Result::not_equivalent);
    CHECK(v.reason == EquivalenceVerdict::Reason::algebra_invariant_mismatch);
    REQUIRE(v.invariant_tables.has_value());
    auto w = coorbit_equivalent(toe, std_same);
    CHECK(w.result == v.result);
  }
}

TEST_CASE("coorbit equivalence: the conjugated pair with isotropic scaling") {
  auto h1 = toeplitz_group(4, Rational(0));
  auto h2 = conjugated_toeplitz_d4();
  auto v = coorbit_equivalent(h1, h2);
  REQUIRE(v.result == EquivalenceVerdict::Result::equivalent);
  CHECK(v.reason == EquivalenceVerdict::Reason::conjugator_found);
  REQUIRE(v.conjugator.has_value());
  auto iso = verify_conjugator(*v.conjugator, h1, h2);
  REQUIRE(iso.has_value());
  CHECK(commuting_check(*v.conjugator, h1, h2));
  // symmetry of the verdict
  auto w = coorbit_equivalent(h2, h1);
  CHECK(w.result == EquivalenceVerdict::Result::equivalent);
}

TEST_CASE("equivalence is reflexive and transitive on the corpus") {
  auto h1 = toeplitz_group(4, Rational(0));
  auto h2 = conjugated_toeplitz_d4();
  CHECK(coorbit_equivalent(h1, h1).result == EquivalenceVerdict::Result::equivalent);
  // transitivity through composed conjugators: conjugate h2 once more
  auto v12 = coorbit_equivalent(h1, h2);
  REQUIRE(v12.conjugator.has_value());
  // C13 = C12 * C23 conjugates h1 to h3 when C23 conjugates h2 to h3; with
  // h3 = h1 (C23 = C12^{-1}) the composition is the identity up to scaling
  RatMatrix C12 = *v12.conjugator;
  RatMatrix C23 = inverse(C12);
  auto iso = verify_conjugator(C12 * C23, h1, h1);
  REQUIRE(iso.has_value());
  CHECK(commuting_check(C12 * C23, h1, h1));
}

TEST_CASE("orbit gate on the classified 2-d groups") {
  Builtin2D diag{Builtin2D::Which::diagonal, Rational(0)};
  Builtin2D simi{Builtin2D::Which::similitude, Rational(0)};
  Builtin2D s_half{Builtin2D::Which::shearlet, Rational(1, 2)};
  Builtin2D s_third{Builtin2D::Which::shearlet, Rational(1, 3)};

  auto v1 = general_group_orbit_gate(diag, simi);
  CHECK(v1.result == EquivalenceVerdict::Result::not_equivalent);
  CHECK(v1.reason == EquivalenceVerdict::Reason::orbit_mismatch);

  auto v2 = general_group_orbit_gate(simi, s_half);
  CHECK(v2.result == EquivalenceVerdict::Result::not_equivalent);
  CHECK(v2.reason == EquivalenceVerdict::Reason::orbit_mismatch);

  auto v3 = general_group_orbit_gate(s_half, s_half);
  CHECK(v3.result == EquivalenceVerdict::Result::equivalent);

  auto v4 = general_group_orbit_gate(s_half, s_third);
  CHECK(v4.result == EquivalenceVerdict::Result::not_equivalent);
  CHECK(v4.reason == EquivalenceVerdict::Reason::diagonal_mismatch);
}

TEST_CASE("transfer map: coordinate identity at equal diagonals, exact otherwise") {
  auto a = standard_group(2, {Rational(1, 2)});
  auto b = standard_group(2, {Rational(1)});
  auto g = make_element(a, 1, Rational(2), {Rational(3)});
  auto same = transfer_map(a, a, g);
  CHECK(same.r == g.r);
  CHECK(same.t == g.t);
  // lambda = 1/2 vs 1: t' = e^{-r/2} t
  auto img = transfer_map(a, b, g);
  CHECK(img.r == g.r);
  CHECK(img.t[0] == ExpSum::exp_term(3, Rational(-1)));
  // defining property: orbit points agree
  CHECK(orbit_point(b, img) == orbit_point(a, g));
}

TEST_CASE("transfer map restricted to shears is a homomorphism iff the"
          " canonical structure constants agree") {
  // equal structure constants: the restriction is the coordinate identity and
  // trivially multiplicative
  auto t = toeplitz_group(4, Rational(0));
  auto s1 = make_element(t, 1, Rational(0), {Rational(1), Rational(2), Rational(-1)});
  auto s2 = make_element(t, 1, Rational(0), {Rational(-2), Rational(1), Rational(3)});
  auto lhs = transfer_map(t, t, multiply(t, s1, s2));
  auto rhs = multiply(t, transfer_map(t, t, s1), transfer_map(t, t, s2));
  CHECK(lhs.t == rhs.t);

  // the conjugated pair is coorbit equivalent, yet its canonical structure
  // constants differ, so the coordinate transfer is NOT multiplicative on
  // shears; the conjugation s -> C^{-1} s C is the homomorphism instead
  auto c = conjugated_toeplitz_d4();
  auto u1 = make_element(t, 1, Rational(0), {Rational(1), Rational(0), Rational(0)});
  auto u2 = make_element(t, 1, Rational(0), {Rational(1), Rational(0), Rational(0)});
  auto l2 = transfer_map(t, c, multiply(t, u1, u2));
  auto r2 = multiply(c, transfer_map(t, c, u1), transfer_map(t, c, u2));
  CHECK_FALSE(l2.t == r2.t);
}

TEST_CASE("witness: growing increments for differing exponents") {
  auto a = standard_group(2, {Rational(1, 2)});
  auto b = standard_group(2, {Rational(1)});
  auto rep = nonequivalence_witness(a, b, 2, 40);
  REQUIRE(rep.rows.size() == 40);
  CHECK(rep.direction == -1);  // exponent gap is negative
  // monotone growth of the image increments
  for (std::size_t i = 5; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].log_image_increment > rep.rows[i - 1].log_image_increment);
  // closed form slope: |lambda - lambda'| = 1/2 per step
  double slope = (rep.rows[30].log_image_increment - rep.rows[10].log_image_increment) / 20;
  CHECK(slope == doctest::Approx(0.5).epsilon(0.05));
  // source increments stay a single letter
  auto inc = multiply(a, invert(a, rep.source[10]), rep.source[11]);
  CHECK(inc.r == Rational(-1));
}

TEST_CASE("witness refuses equal diagonals") {
  auto a = standard_group(2, {Rational(1, 2)});
  CHECK_THROWS_AS((void)nonequivalence_witness(a, a, 2), std::invalid_argument);
}

TEST_CASE("witness with the swapped role: source exponent equal to one") {
  auto a = standard_group(2, {Rational(1)});
  auto b = standard_group(2, {Rational(1, 2)});
  auto rep = nonequivalence_witness(a, b, 2, 30);
  CHECK(rep.swapped);
  CHECK(rep.rows.back().log_image_increment > rep.rows.front().log_image_increment + 5);
}

TEST_CASE("witness probe: REJECT linking the algebraic and metric criteria") {
  auto a = standard_group(2, {Rational(1, 2)});
  auto b = standard_group(2, {Rational(1)});
  auto witness = nonequivalence_witness(a, b, 2, 60);
  auto rep = witness_probe(a, b, witness);
  CHECK(rep.verdict == QIReport::Verdict::reject);
  CHECK_FALSE(rep.witnesses.empty());
}
