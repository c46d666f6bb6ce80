#include "coarsekit/shearlet.hpp"

#include <cmath>
#include <sstream>

namespace coarsekit {

std::vector<Rational> ShearletGroupSpec::weights() const {
  std::vector<Rational> w(shear_dim());
  for (std::size_t j = 0; j < shear_dim(); ++j) w[j] = 1 - lambda[j];
  return w;
}

Rational ShearletGroupSpec::trace() const {
  Rational t = 1;
  for (const auto& l : lambda) t += l;
  return t;
}

void ShearletGroupSpec::validate() const {
  std::size_t n = shear_dim();
  if (d < 2) throw std::invalid_argument("shearlet group needs dimension >= 2");
  if (lambda.size() != n || basis.size() != n || structure.size() != n)
    throw std::invalid_argument("shearlet spec has inconsistent sizes");

  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid shearlet spec: " + what); };

  // canonical first rows: X_i^T e_1 = e_i
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Rational expect = (j == i + 1) ? 1 : 0;
      if (basis[i](0, j) != expect) fail("canonical basis first-row condition fails for X_" + std::to_string(i + 2));
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (structure[j][k].size() != n) fail("structure constant table shape");
      for (std::size_t m = 0; m < n; ++m)
        if (structure[j][k][m] != structure[k][j][m]) fail("structure constants not commutative");
    }
  // graded nilpotency w.r.t. the filtration by product powers: if
  // c_{jk}^m != 0 then level(X_m) >= level(X_j) + level(X_k), and the
  // (d-1)-fold products already vanish.
  {
    auto levels = filtration_levels(*this);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
          if (structure[j][k][m] != 0 && levels[m] < levels[j] + levels[k])
            fail("structure constants violate graded nilpotency");
  }
  // matrices realize the structure constants
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      RatMatrix prod = basis[j] * basis[k];
      RatMatrix want(d, d);
      for (std::size_t m = 0; m < n; ++m)
        if (structure[j][k][m] != 0) want += basis[m].scaled(structure[j][k][m]);
      if (prod != want) fail("canonical matrices do not realize the structure constants");
    }
  // associativity of the abstract algebra: (X_i X_j) X_k == X_i (X_j X_k)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          Rational lhs = 0, rhs = 0;
          for (std::size_t p = 0; p < n; ++p) {
            lhs += structure[i][j][p] * structure[p][k][m];
            rhs += structure[j][k][p] * structure[i][p][m];
          }
          if (lhs != rhs) fail("structure constants not associative");
        }
  // compatibility of the diagonal: [Y, X_j] = (1 - lambda_j) X_j exactly
  RatMatrix Y(d, d);
  Y(0, 0) = 1;
  for (std::size_t j = 0; j < n; ++j) Y(j + 1, j + 1) = lambda[j];
  for (std::size_t j = 0; j < n; ++j) {
    RatMatrix bracket = Y * basis[j] - basis[j] * Y;
    if (bracket != basis[j].scaled(1 - lambda[j]))
      fail("diagonal exponents incompatible with the shearing algebra ([Y, X_" +
           std::to_string(j + 2) + "] is not (1-lambda)X)");
  }
}

namespace {

RatMatrix rows_to_matrix(const std::vector<std::vector<Rational>>& rows, std::size_t n) {
  RatMatrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace

std::vector<RatMatrix> power_span_bases(const ShearletGroupSpec& spec) {
  std::size_t n = spec.shear_dim();
  std::vector<RatMatrix> out{RatMatrix::identity(n)};
  while (true) {
    const RatMatrix& prev = out.back();
    std::vector<std::vector<Rational>> basis;
    for (std::size_t r = 0; r < prev.rows(); ++r) {
      std::vector<Rational> v(n);
      for (std::size_t m = 0; m < n; ++m) v[m] = prev(r, m);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        auto prod = spec.shear_product(v, e);
        basis.push_back(std::move(prod));
        if (rank(rows_to_matrix(basis, n)) < basis.size()) basis.pop_back();
      }
    }
    if (basis.empty()) break;
    out.push_back(rows_to_matrix(basis, n));
  }
  return out;
}

std::vector<int> filtration_levels(const ShearletGroupSpec& spec) {
  std::size_t n = spec.shear_dim();
  auto spans = power_span_bases(spec);
  std::vector<int> lev(n, 1);
  for (std::size_t k = 1; k < spans.size(); ++k) {
    const RatMatrix& B = spans[k];
    for (std::size_t m = 0; m < n; ++m) {
      // e_m in row span of B?
      RatMatrix with(B.rows() + 1, n);
      for (std::size_t r = 0; r < B.rows(); ++r)
        for (std::size_t c2 = 0; c2 < n; ++c2) with(r, c2) = B(r, c2);
      with(B.rows(), m) = 1;
      if (rank(with) == rank(B)) lev[m] = static_cast<int>(k) + 1;
    }
  }
  return lev;
}

namespace {

// Canonical matrices as transposed multiplication operators of the algebra
// acting on span{1, b_2, ..., b_d}.
std::vector<RatMatrix> matrices_from_structure(
    std::size_t d, const std::vector<std::vector<std::vector<Rational>>>& c) {
  std::size_t n = d - 1;
  std::vector<RatMatrix> X(n, RatMatrix(d, d));
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix M(d, d);
    M(i + 1, 0) = 1;  // b_i * 1 = b_i
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        if (c[i][j][m] != 0) M(m + 1, j + 1) = c[i][j][m];
    X[i] = M.transpose();
  }
  return X;
}

std::vector<std::vector<std::vector<Rational>>> zero_structure(std::size_t n) {
  return std::vector<std::vector<std::vector<Rational>>>(
      n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
}

}  // namespace

ShearletGroupSpec standard_group(std::size_t d, std::vector<Rational> lambda) {
  if (d < 2) throw std::invalid_argument("standard group needs d >= 2");
  if (lambda.size() != d - 1)
    throw std::invalid_argument("standard group needs d-1 diagonal exponents");
  ShearletGroupSpec s;
  s.d = d;
  s.lambda = std::move(lambda);
  s.structure = zero_structure(d - 1);
  s.basis = matrices_from_structure(d, s.structure);
  s.kind = "standard";
  std::ostringstream nm;
  nm << "standard(d=" << d << ", lambda=";
  for (std::size_t i = 0; i < s.lambda.size(); ++i)
    nm << (i ? "," : "") << format_rational(s.lambda[i]);
  nm << ")";
  s.name = nm.str();
  s.validate();
  return s;
}

ShearletGroupSpec toeplitz_group(std::size_t d, const Rational& delta) {
  if (d < 2) throw std::invalid_argument("Toeplitz group needs d >= 2");
  ShearletGroupSpec s;
  s.d = d;
  std::size_t n = d - 1;
  s.lambda.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.lambda[j] = 1 - Rational(j + 1) * delta;
  // b_j b_k = b_{j+k} in the truncated polynomial algebra (X_{i+1} = X_2^i)
  s.structure = zero_structure(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t deg = j + k + 2;  // x^{j+1} * x^{k+1}
      if (deg <= n) s.structure[j][k][deg - 1] = 1;
    }
  s.basis = matrices_from_structure(d, s.structure);
  s.kind = "toeplitz";
  s.name = "toeplitz(d=" + std::to_string(d) + ", delta=" + format_rational(delta) + ")";
  s.validate();
  return s;
}

ShearletGroupSpec d4_family(int alpha, std::vector<Rational> lambda) {
  if (alpha < -1 || alpha > 1)
    throw std::invalid_argument("d4 family needs alpha in {-1, 0, 1}");
  if (lambda.size() != 3) throw std::invalid_argument("d4 family needs 3 diagonal exponents");
  ShearletGroupSpec s;
  s.d = 4;
  s.lambda = std::move(lambda);
  s.structure = zero_structure(3);
  s.structure[0][0][2] = 1;      // X2^2 = X4
  s.structure[1][1][2] = alpha;  // X3^2 = alpha X4
  s.basis = matrices_from_structure(4, s.structure);
  s.kind = "d4";
  s.name = "d4(alpha=" + std::to_string(alpha) + ")";
  s.validate();  // rejects incompatible lambda
  return s;
}

ShearletGroupSpec custom_group(std::vector<Rational> lambda,
                               std::vector<std::vector<std::vector<Rational>>> structure,
                               bool sign_component) {
  ShearletGroupSpec s;
  s.d = lambda.size() + 1;
  s.lambda = std::move(lambda);
  s.structure = std::move(structure);
  s.basis = matrices_from_structure(s.d, s.structure);
  s.sign_component = sign_component;
  s.kind = "custom";
  s.name = "custom(d=" + std::to_string(s.d) + ")";
  s.validate();
  return s;
}

// --- element arithmetic -------------------------------------------------------

GroupElement identity_element(const ShearletGroupSpec& spec) {
  return {1, Rational(0), std::vector<ExpSum>(spec.shear_dim(), ExpSum())};
}

GroupElement make_element(const ShearletGroupSpec& spec, int eps, Rational r,
                          std::vector<Rational> t) {
  if (t.size() != spec.shear_dim())
    throw std::invalid_argument("shear coordinate count mismatch");
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +-1");
  if (eps == -1 && !spec.sign_component)
    throw std::invalid_argument("group has no sign component");
  GroupElement g;
  g.eps = eps;
  g.r = std::move(r);
  g.t.reserve(t.size());
  for (auto& v : t) g.t.push_back(ExpSum(v));
  return g;
}

GroupElement multiply(const ShearletGroupSpec& spec, const GroupElement& a,
                      const GroupElement& b) {
  auto w = spec.weights();
  GroupElement out;
  out.eps = a.eps * b.eps;
  out.r = a.r + b.r;
  std::vector<ExpSum> tau(spec.shear_dim());
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    tau[j] = a.t[j] * ExpSum::exp_term(1, b.r * w[j]);
  auto bil = spec.shear_product(tau, b.t);
  out.t.resize(spec.shear_dim());
  for (std::size_t m = 0; m < spec.shear_dim(); ++m) out.t[m] = tau[m] + b.t[m] + bil[m];
  return out;
}

namespace {

// Coordinates of (I + N)^{-1} - I for N = sum t_j X_j: alternating Neumann
// series, exact and finite by nilpotency.
template <typename S>
std::vector<S> neumann_inverse_coords(const ShearletGroupSpec& spec, const std::vector<S>& t) {
  std::size_t n = spec.shear_dim();
  std::vector<S> acc(n, S(0)), power = t;
  int sign = -1;
  for (std::size_t k = 1; k <= n; ++k) {
    bool all_zero = true;
    for (std::size_t m = 0; m < n; ++m) {
      if (sign > 0) acc[m] += power[m];
      else acc[m] += S(-1) * power[m];
      if (!(power[m] == S(0))) all_zero = false;
    }
    if (all_zero) break;
    power = spec.shear_product(power, t);
    sign = -sign;
  }
  return acc;
}

}  // namespace

GroupElement invert(const ShearletGroupSpec& spec, const GroupElement& a) {
  auto w = spec.weights();
  GroupElement out;
  out.eps = a.eps;
  out.r = -a.r;
  std::vector<ExpSum> tau(spec.shear_dim());
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    tau[j] = a.t[j] * ExpSum::exp_term(1, -a.r * w[j]);
  out.t = neumann_inverse_coords(spec, tau);
  return out;
}

ExpMatrix to_matrix(const ShearletGroupSpec& spec, const GroupElement& a) {
  std::size_t d = spec.d;
  // u(t)^{-1} = I + sum t*_j X_j
  auto tstar = neumann_inverse_coords(spec, a.t);
  ExpMatrix u_inv = to_expsum(RatMatrix::identity(d));
  for (std::size_t j = 0; j < spec.shear_dim(); ++j) {
    if (tstar[j].is_zero()) continue;
    for (std::size_t row = 0; row < d; ++row)
      for (std::size_t col = 0; col < d; ++col)
        if (spec.basis[j](row, col) != 0)
          u_inv(row, col) += ExpSum(spec.basis[j](row, col)) * tstar[j];
  }
  // exp(-rY) = diag(e^{-r}, e^{-lambda_j r}), times eps
  ExpMatrix m(d, d);
  ExpSum s_eps(Rational(a.eps));
  for (std::size_t row = 0; row < d; ++row) {
    Rational lam = row == 0 ? Rational(1) : spec.lambda[row - 1];
    ExpSum diag = ExpSum::exp_term(1, -a.r * lam) * s_eps;
    for (std::size_t col = 0; col < d; ++col) m(row, col) = diag * u_inv(row, col);
  }
  return m;
}

ExpSum abs_determinant(const ShearletGroupSpec& spec, const GroupElement& a) {
  return ExpSum::exp_term(1, -a.r * spec.trace());
}

GroupElement from_matrix(const ShearletGroupSpec& spec, const ExpMatrix& m) {
  if (m.rows() != spec.d || m.cols() != spec.d)
    throw std::invalid_argument("from_matrix: shape mismatch");
  const ExpSum& m00 = m(0, 0);
  if (!m00.is_monomial()) throw MembershipError(1.0);
  Rational coef = m00.mono_coefficient();
  if (coef != 1 && coef != -1) throw MembershipError(1.0);
  GroupElement g;
  g.eps = coef == 1 ? 1 : -1;
  g.r = -m00.mono_exponent();
  // first row of eps*exp(-rY)u(t)^{-1} is eps*e^{-r}(1, t*_2, ..., t*_d)
  std::vector<ExpSum> tstar(spec.shear_dim());
  for (std::size_t j = 0; j < spec.shear_dim(); ++j) tstar[j] = m(0, j + 1).div_mono(m00);
  g.t = neumann_inverse_coords(spec, tstar);  // u(t) = (u(t*))^{-1}
  ExpMatrix rebuilt = to_matrix(spec, g);
  if (rebuilt != m) {
    double res = 0;
    for (std::size_t i = 0; i < spec.d; ++i)
      for (std::size_t j = 0; j < spec.d; ++j)
        res = std::max(res, std::fabs((rebuilt(i, j) - m(i, j)).eval()));
    throw MembershipError(res);
  }
  return g;
}

GroupElementF multiply(const ShearletGroupSpec& spec, const GroupElementF& a,
                       const GroupElementF& b) {
  auto w = spec.weights();
  GroupElementF out;
  out.eps = a.eps * b.eps;
  out.r = a.r + b.r;
  std::vector<double> tau(spec.shear_dim());
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    tau[j] = a.t[j] * std::exp(b.r * to_double(w[j]));
  auto bil = spec.shear_product(tau, b.t);
  out.t.resize(spec.shear_dim());
  for (std::size_t m = 0; m < spec.shear_dim(); ++m) out.t[m] = tau[m] + b.t[m] + bil[m];
  return out;
}

GroupElementF invert(const ShearletGroupSpec& spec, const GroupElementF& a) {
  auto w = spec.weights();
  GroupElementF out;
  out.eps = a.eps;
  out.r = -a.r;
  std::vector<double> tau(spec.shear_dim());
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    tau[j] = a.t[j] * std::exp(-a.r * to_double(w[j]));
  out.t = neumann_inverse_coords(spec, tau);
  return out;
}

GroupElementF approx(const GroupElement& g) {
  GroupElementF f;
  f.eps = g.eps;
  f.r = to_double(g.r);
  f.t.reserve(g.t.size());
  for (const auto& v : g.t) f.t.push_back(v.eval());
  return f;
}

std::vector<ExpSum> orbit_point(const ShearletGroupSpec& spec, const GroupElement& g) {
  std::vector<ExpSum> x(spec.d);
  ExpSum s_eps{Rational(g.eps)};
  x[0] = ExpSum::exp_term(1, g.r) * s_eps;
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    x[j + 1] = g.t[j] * ExpSum::exp_term(1, g.r * spec.lambda[j]) * s_eps;
  return x;
}

FrequencyPoint orbit_point_f(const ShearletGroupSpec& spec, const GroupElementF& g) {
  FrequencyPoint x(spec.d);
  x[0] = g.eps * std::exp(g.r);
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    x[j + 1] = g.eps * g.t[j] * std::exp(g.r * to_double(spec.lambda[j]));
  return x;
}

std::optional<GroupElement> orbit_preimage(const ShearletGroupSpec& spec,
                                           const std::vector<ExpSum>& x) {
  if (x.size() != spec.d) throw std::invalid_argument("orbit_preimage: dimension mismatch");
  if (x[0].is_zero() || !x[0].is_monomial()) return std::nullopt;
  Rational coef = x[0].mono_coefficient();
  if (coef != 1 && coef != -1) return std::nullopt;
  GroupElement g;
  g.eps = coef == 1 ? 1 : -1;
  g.r = x[0].mono_exponent();
  g.t.resize(spec.shear_dim());
  ExpSum s_eps{Rational(g.eps)};
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    g.t[j] = x[j + 1] * ExpSum::exp_term(1, -g.r * spec.lambda[j]) * s_eps;
  if (g.eps == -1 && !spec.sign_component) return std::nullopt;
  return g;
}

GroupElementF orbit_preimage_f(const ShearletGroupSpec& spec, const FrequencyPoint& x) {
  if (x.size() != spec.d) throw std::invalid_argument("orbit_preimage: dimension mismatch");
  if (x[0] == 0)
    throw std::domain_error("point lies outside the dual orbit (first coordinate vanishes)");
  GroupElementF g;
  g.eps = x[0] > 0 ? 1 : -1;
  if (g.eps == -1 && !spec.sign_component)
    throw std::domain_error("point lies outside the dual orbit of the sign-free group");
  g.r = std::log(std::fabs(x[0]));
  g.t.resize(spec.shear_dim());
  for (std::size_t j = 0; j < spec.shear_dim(); ++j)
    g.t[j] = g.eps * x[j + 1] * std::exp(-g.r * to_double(spec.lambda[j]));
  return g;
}

ExpMatrix dual_action_matrix(const ShearletGroupSpec& spec, const GroupElement& g) {
  return to_matrix(spec, invert(spec, g)).transpose();
}

}  // namespace coarsekit
