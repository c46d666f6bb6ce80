#include "coarsekit/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "coarsekit/lattice.hpp"

namespace coarsekit {

namespace {
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

std::string OrbitDescriptor::str() const {
  switch (kind) {
    case Kind::punctured_space: return "R^" + std::to_string(dim) + " \\ {0}";
    case Kind::halfline_product:
      return "R* x R^" + std::to_string(dim - 1);
    case Kind::orthant_union: return "(R*)^" + std::to_string(dim);
  }
  return "?";
}

OrbitDescriptor dual_orbit(const ShearletGroupSpec& spec) {
  return {OrbitDescriptor::Kind::halfline_product, spec.d};
}

bool orbits_equal(const OrbitDescriptor& a, const OrbitDescriptor& b) { return a == b; }

std::string Builtin2D::str() const {
  switch (which) {
    case Which::diagonal: return "diagonal";
    case Which::similitude: return "similitude";
    case Which::shearlet: return "shearlet(c=" + format_rational(c) + ")";
  }
  return "?";
}

OrbitDescriptor dual_orbit(const Builtin2D& g) {
  switch (g.which) {
    case Builtin2D::Which::diagonal: return {OrbitDescriptor::Kind::orthant_union, 2};
    case Builtin2D::Which::similitude: return {OrbitDescriptor::Kind::punctured_space, 2};
    case Builtin2D::Which::shearlet: return {OrbitDescriptor::Kind::halfline_product, 2};
  }
  return {};
}

// --- invariants -------------------------------------------------------------------

std::string AlgebraInvariants::str() const {
  std::ostringstream os;
  os << "power dims:";
  for (auto d : power_dims) os << " " << d;
  os << "; annihilator dim " << annihilator_dim << "; nilpotency index "
     << nilpotency_index;
  if (square_form)
    os << "; square form (rank " << square_form->first << ", |sig| "
       << square_form->second << ")";
  return os.str();
}

AlgebraInvariants algebra_invariants(const ShearletGroupSpec& spec) {
  std::size_t n = spec.shear_dim();
  AlgebraInvariants inv;
  auto spans = power_span_bases(spec);
  for (std::size_t k = 1; k < spans.size(); ++k)
    inv.power_dims.push_back(spans[k].rows());
  inv.nilpotency_index = spans.size() + 1;  // first vanishing power

  // annihilator: t with sum_j t_j c_{jk}^m = 0 for all k, m
  RatMatrix sys(n * n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t j = 0; j < n; ++j) sys(k * n + m, j) = spec.structure[j][k][m];
  inv.annihilator_dim = kernel_basis(sys).size();

  // quadratic map X -> X^2 into s^(2) when that span is a line
  if (!inv.power_dims.empty() && inv.power_dims[0] == 1) {
    const RatMatrix& gen = spans[1];  // 1 x n row spanning s^(2)
    // coordinates w.r.t. the generator: pick its first nonzero entry as scale
    std::size_t piv = 0;
    while (piv < n && gen(0, piv) == 0) ++piv;
    // complement basis: canonical directions not in s^(2); Gram matrix of the
    // square map q(v) = coefficient of (sum v_j X_j)^2 on the generator
    std::vector<std::size_t> comp;
    auto levels = filtration_levels(spec);
    for (std::size_t j = 0; j < n; ++j)
      if (levels[j] == 1) comp.push_back(j);
    RatMatrix gram(comp.size(), comp.size());
    for (std::size_t a2 = 0; a2 < comp.size(); ++a2)
      for (std::size_t b2 = 0; b2 < comp.size(); ++b2)
        gram(a2, b2) = spec.structure[comp[a2]][comp[b2]][piv] / gen(0, piv);
    // diagonalize the rational symmetric form by congruence to read off
    // rank and |signature|
    RatMatrix g = gram;
    std::size_t m = comp.size();
    int pos = 0, neg = 0;
    std::vector<bool> done(m, false);
    for (std::size_t step = 0; step < m; ++step) {
      // find a nonzero diagonal entry (after symmetric updates)
      std::size_t p = m;
      for (std::size_t i = 0; i < m; ++i)
        if (!done[i] && g(i, i) != 0) { p = i; break; }
      if (p == m) {
        // try to create one from an off-diagonal pair: g(i,j) != 0
        std::size_t pi = m, pj = m;
        for (std::size_t i = 0; i < m && pi == m; ++i)
          for (std::size_t j2 = i + 1; j2 < m; ++j2)
            if (!done[i] && !done[j2] && g(i, j2) != 0) { pi = i; pj = j2; break; }
        if (pi == m) break;  // remaining block is zero
        // row/col_i += row/col_j makes the diagonal entry 2 g(i,j)
        for (std::size_t t2 = 0; t2 < m; ++t2) g(pi, t2) += g(pj, t2);
        for (std::size_t t2 = 0; t2 < m; ++t2) g(t2, pi) += g(t2, pj);
        p = pi;
      }
      if (g(p, p) > 0) ++pos; else ++neg;
      Rational d = g(p, p);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == p || done[i]) continue;
        Rational f = g(i, p) / d;
        if (f == 0) continue;
        for (std::size_t t2 = 0; t2 < m; ++t2) g(i, t2) -= f * g(p, t2);
        for (std::size_t t2 = 0; t2 < m; ++t2) g(t2, i) -= f * g(t2, p);
      }
      done[p] = true;
    }
    inv.square_form = {pos + neg, std::abs(pos - neg)};
  }
  return inv;
}

// --- conjugator search -----------------------------------------------------------------

std::optional<RatMatrix> verify_conjugator(const RatMatrix& C, const ShearletGroupSpec& a,
                                           const ShearletGroupSpec& b) {
  if (a.d != b.d || C.rows() != a.d || C.cols() != a.d) return std::nullopt;
  RatMatrix Cinv;
  try {
    Cinv = inverse(C);
  } catch (const SingularMatrix&) {
    return std::nullopt;
  }
  std::size_t n = a.shear_dim();
  RatMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix img = Cinv * a.basis[i] * C;
    // the canonical first row determines the coordinates; membership in the
    // span is then an exact matrix identity
    RatMatrix recon(a.d, a.d);
    for (std::size_t j = 0; j < n; ++j) {
      Rational coord = img(0, j + 1);
      A(j, i) = coord;
      if (coord != 0) recon += b.basis[j].scaled(coord);
    }
    if (img != recon) return std::nullopt;
  }
  try {
    (void)inverse(A);
  } catch (const SingularMatrix&) {
    return std::nullopt;
  }
  return A;
}

namespace {

// residual of the algebra-isomorphism equations for the matrix A:
// sum_m A_{im} c_{jk}^m - sum_{p,q} c'_{pq}^i A_{pj} A_{qk}
struct IsoSystem {
  const ShearletGroupSpec* a;
  const ShearletGroupSpec* b;
  std::size_t n;

  std::vector<double> ca, cb;  // dense copies for speed
  IsoSystem(const ShearletGroupSpec& sa, const ShearletGroupSpec& sb)
      : a(&sa), b(&sb), n(sa.shear_dim()) {
    ca.resize(n * n * n);
    cb.resize(n * n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          ca[(j * n + k) * n + m] = to_double(sa.structure[j][k][m]);
          cb[(j * n + k) * n + m] = to_double(sb.structure[j][k][m]);
        }
  }

  // unknowns: the n^2 entries of A plus an auxiliary z enforcing
  // invertibility through z * det(A) = 1 (singular homomorphisms such as
  // A = 0 solve the matching equations and would otherwise trap the search)
  std::size_t vars() const { return n * n + 1; }
  std::size_t equations() const { return n * n * (n + 1) / 2 + 1; }

  static double det(const std::vector<double>& A, std::size_t n, std::size_t skip_r,
                    std::size_t skip_c) {
    // determinant of the minor with row skip_r / col skip_c removed
    // (skip_r = n means the full matrix); n <= 5, recursion is fine
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != skip_r) rows.push_back(i);
      if (i != skip_c) cols.push_back(i);
    }
    std::function<double(std::vector<std::size_t>, std::vector<std::size_t>)> go =
        [&](std::vector<std::size_t> rs, std::vector<std::size_t> cs) -> double {
      if (rs.empty()) return 1.0;
      double s = 0;
      double sign = 1;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        double piv = A[rs[0] * n + cs[k]];
        if (piv != 0) {
          std::vector<std::size_t> rs2(rs.begin() + 1, rs.end());
          std::vector<std::size_t> cs2 = cs;
          cs2.erase(cs2.begin() + k);
          s += sign * piv * go(rs2, cs2);
        }
        sign = -sign;
      }
      return s;
    };
    return go(rows, cols);
  }

  void residual(const std::vector<double>& X, std::vector<double>& F) const {
    F.assign(equations(), 0.0);
    std::size_t e = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
          double lhs = 0;
          for (std::size_t m = 0; m < n; ++m) lhs += X[i * n + m] * ca[(j * n + k) * n + m];
          double rhs = 0;
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
              rhs += cb[(p * n + q) * n + i] * X[p * n + j] * X[q * n + k];
          F[e++] = lhs - rhs;
        }
    F[e] = X[n * n] * det(X, n, n, n) - 1.0;
  }

  void jacobian(const std::vector<double>& X, DMatrix& J) const {
    J = DMatrix(equations(), vars());
    std::size_t e = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
          // d lhs / d A_{im} = c_{jk}^m
          for (std::size_t m = 0; m < n; ++m)
            J(e, i * n + m) += ca[(j * n + k) * n + m];
          // d rhs / d A_{pj} and d A_{qk}
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
              double c = cb[(p * n + q) * n + i];
              if (c == 0) continue;
              J(e, p * n + j) -= c * X[q * n + k];
              J(e, q * n + k) -= c * X[p * n + j];
            }
          ++e;
        }
    // z * det(A) - 1: cofactor expansion for the A-entries
    double z = X[n * n];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double cof = det(X, n, i, j);
        if ((i + j) % 2 == 1) cof = -cof;
        J(e, i * n + j) = z * cof;
      }
    J(e, n * n) = det(X, n, n, n);
  }

  // Gauss-Newton over the unfrozen entries; returns the max residual reached.
  double converge(std::vector<double>& A, const std::vector<bool>& frozen,
                  double tol, int iters) const {
    std::vector<std::size_t> free_idx;
    for (std::size_t v = 0; v < A.size(); ++v)
      if (!frozen[v]) free_idx.push_back(v);
    std::vector<double> F;
    DMatrix J;
    double norm = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iters; ++it) {
      residual(A, F);
      norm = 0;
      for (double f : F) norm = std::max(norm, std::fabs(f));
      if (norm < tol || free_idx.empty()) return norm;
      jacobian(A, J);
      DMatrix Jf(J.rows(), free_idx.size());
      for (std::size_t r = 0; r < J.rows(); ++r)
        for (std::size_t c = 0; c < free_idx.size(); ++c) Jf(r, c) = J(r, free_idx[c]);
      std::vector<double> rhs(F.size());
      for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
      std::vector<double> step;
      try {
        step = least_squares(Jf, rhs);
      } catch (const SingularMatrix&) {
        return norm;
      }
      double slen = 0;
      for (double v : step) slen = std::max(slen, std::fabs(v));
      if (slen > 10) for (auto& v : step) v *= 10 / slen;
      if (slen < 1e-16 && norm > tol) return norm;
      for (std::size_t c = 0; c < free_idx.size(); ++c) A[free_idx[c]] += step[c];
    }
    residual(A, F);
    norm = 0;
    for (double f : F) norm = std::max(norm, std::fabs(f));
    return norm;
  }
};

// The converged point generally sits on a positive-dimensional solution
// manifold at irrational coordinates. Slice down to an exact rational point
// by snapping entries one at a time and re-converging the remainder (the
// auxiliary determinant variable stays free throughout).
std::optional<RatMatrix> rationalize_on_manifold(const IsoSystem& sys, std::vector<double> A,
                                                 double tol, long long max_den) {
  std::size_t entries = sys.n * sys.n;
  std::vector<bool> frozen(sys.vars(), false);
  std::vector<Rational> values(entries, Rational(0));
  double fine_tol = std::min(tol, 1e-12);
  for (std::size_t idx = 0; idx < entries; ++idx) {
    double v = A[idx];
    // small denominators first (free parameters of the manifold snap to
    // them); the continued-fraction guess last, for the entries the earlier
    // freezes already determined
    std::vector<Rational> candidates;
    for (long den = 1; den <= 12; ++den) {
      Rational snap(std::llround(v * static_cast<double>(den)), den);
      if (std::find(candidates.begin(), candidates.end(), snap) == candidates.end())
        candidates.push_back(snap);
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Rational& x, const Rational& y) {
      return std::fabs(to_double(x) - v) < std::fabs(to_double(y) - v);
    });
    if (candidates.size() > 4) candidates.resize(4);
    Rational cf = rational_reconstruct(v, max_den);
    if (std::fabs(to_double(cf) - v) < 1e-7 * std::max(1.0, std::fabs(v)) &&
        std::find(candidates.begin(), candidates.end(), cf) == candidates.end())
      candidates.push_back(cf);
    bool ok = false;
    std::vector<double> backup = A;
    for (const Rational& cand : candidates) {
      A = backup;
      A[idx] = to_double(cand);
      frozen[idx] = true;
      if (sys.converge(A, frozen, fine_tol, 40) < fine_tol) {
        values[idx] = cand;
        A[idx] = to_double(cand);
        ok = true;
        break;
      }
    }
    if (!ok) return std::nullopt;
  }
  std::size_t n = sys.n;
  RatMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = values[i * n + j];
  return M;
}

RatMatrix conjugator_from_iso(const RatMatrix& A, std::size_t d) {
  // C = blockdiag(1, A^T): realizes the isomorphism with matrix A as
  // conjugation, X -> C^{-1} X C
  RatMatrix C(d, d);
  C(0, 0) = 1;
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j + 1 < d; ++j) C(i + 1, j + 1) = A(j, i);
  return C;
}

bool exact_algebra_iso(const RatMatrix& A, const ShearletGroupSpec& a,
                       const ShearletGroupSpec& b) {
  std::size_t n = a.shear_dim();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        Rational lhs = 0;
        for (std::size_t m = 0; m < n; ++m) lhs += A(i, m) * a.structure[j][k][m];
        Rational rhs = 0;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            rhs += b.structure[p][q][i] * A(p, j) * A(q, k);
        if (lhs != rhs) return false;
      }
  try {
    (void)inverse(A);
  } catch (const SingularMatrix&) {
    return false;
  }
  return true;
}

}  // namespace

ConjugatorResult find_conjugator(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                                 const ConjugatorBudget& budget) {
  if (a.d != b.d) throw std::invalid_argument("find_conjugator: dimension mismatch");
  ConjugatorResult res;

  auto inv_a = algebra_invariants(a), inv_b = algebra_invariants(b);
  if (!(inv_a == inv_b)) {
    res.status = ConjugatorResult::Status::not_found;
    res.certificate = "algebra invariants differ: [" + inv_a.str() + "] vs [" + inv_b.str() + "]";
    return res;
  }

  std::size_t n = a.shear_dim();
  IsoSystem sys(a, b);
  std::mt19937_64 rng(budget.seed);

  auto consider = [&](const RatMatrix& A) {
    if (!exact_algebra_iso(A, a, b)) return;
    for (const auto& seen : res.algebra_isos)
      if (seen == A) return;
    RatMatrix C = conjugator_from_iso(A, a.d);
    auto verified = verify_conjugator(C, a, b);
    if (!verified || !(*verified == A)) return;
    res.algebra_isos.push_back(A);
    res.conjugators.push_back(C);
  };

  // the identity matrix is an isomorphism iff the structure constants agree;
  // try it first (covers comparing a spec against itself)
  consider(RatMatrix::identity(n));

  std::vector<double> A(sys.vars());
  std::vector<bool> none_frozen(sys.vars(), false);
  for (int s = 0; s < budget.seeds && static_cast<int>(res.conjugators.size()) < budget.max_found;
       ++s) {
    ++res.seeds_used;
    for (std::size_t v = 0; v < n * n; ++v) A[v] = 4 * u01(rng) - 2;
    double d0 = IsoSystem::det(A, n, n, n);
    A[n * n] = std::fabs(d0) > 1e-6 ? 1.0 / d0 : 1.0;
    if (sys.converge(A, none_frozen, budget.tol, 80) >= budget.tol) continue;
    ++res.converged;
    auto M = rationalize_on_manifold(sys, A, budget.tol, budget.max_denominator);
    if (!M) continue;
    ++res.rationalized;
    consider(*M);
  }

  if (!res.conjugators.empty()) {
    res.status = ConjugatorResult::Status::found;
    return res;
  }
  res.status = ConjugatorResult::Status::indeterminate;
  res.certificate = "no conjugator found within the seed budget; invariants agree, so "
                    "non-existence is not certified";
  return res;
}

bool commuting_check(const RatMatrix& C, const ShearletGroupSpec& a,
                     const ShearletGroupSpec& b) {
  if (a.lambda != b.lambda)
    throw std::logic_error("commuting_check requires equal scaling generators");
  std::size_t d = a.d, n = a.shear_dim();
  RatMatrix Y(d, d);
  Y(0, 0) = 1;
  for (std::size_t j = 0; j < n; ++j) Y(j + 1, j + 1) = a.lambda[j];
  RatMatrix Cinv = inverse(C);

  // infinitesimal identity
  for (std::size_t j = 0; j < n; ++j) {
    RatMatrix conj = Cinv * a.basis[j] * C;
    RatMatrix lhs = Y * conj - conj * Y;
    RatMatrix rhs = Cinv * (Y * a.basis[j] - a.basis[j] * Y) * C;
    if (lhs != rhs) return false;
  }

  // finite-scale cross-check at sampled rational scales and shears; this is
  // the group-level identity the infinitesimal one is standing in for, and
  // the suite validates that the two agree on every corpus group
  ExpMatrix Ce = to_expsum(C), Cie = to_expsum(Cinv);
  std::vector<Rational> scales{Rational(1), Rational(-2), Rational(1, 2)};
  std::vector<std::vector<Rational>> shears;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> t(n, Rational(0));
    t[j] = 1;
    shears.push_back(t);
  }
  shears.push_back(std::vector<Rational>(n, Rational(1)));
  for (const Rational& r : scales) {
    ExpMatrix D(d, d), Dinv(d, d);
    D(0, 0) = ExpSum::exp_term(1, r);
    Dinv(0, 0) = ExpSum::exp_term(1, -r);
    for (std::size_t j = 0; j < n; ++j) {
      D(j + 1, j + 1) = ExpSum::exp_term(1, r * a.lambda[j]);
      Dinv(j + 1, j + 1) = ExpSum::exp_term(1, -r * a.lambda[j]);
    }
    for (const auto& t : shears) {
      ExpMatrix S = to_expsum(RatMatrix::identity(d));
      for (std::size_t j = 0; j < n; ++j)
        if (t[j] != 0) {
          for (std::size_t r2 = 0; r2 < d; ++r2)
            for (std::size_t c2 = 0; c2 < d; ++c2)
              if (a.basis[j](r2, c2) != 0)
                S(r2, c2) += ExpSum(a.basis[j](r2, c2) * t[j]);
        }
      ExpMatrix lhs = Dinv * (Cie * S * Ce) * D;
      ExpMatrix rhs = Cie * (Dinv * S * D) * Ce;
      if (lhs != rhs) return false;
    }
  }
  return true;
}

// --- pipeline ------------------------------------------------------------------------

std::string EquivalenceVerdict::reason_name(Reason r) {
  switch (r) {
    case Reason::orbit_mismatch: return "orbit-mismatch";
    case Reason::diagonal_mismatch: return "diagonal-mismatch";
    case Reason::algebra_invariant_mismatch: return "algebra-invariant-mismatch";
    case Reason::conjugator_found: return "conjugator-found";
    case Reason::commuting_check_failed: return "commuting-check-failed";
    case Reason::search_exhausted: return "search-exhausted";
    case Reason::same_spec: return "same-spec";
  }
  return "?";
}

EquivalenceVerdict coorbit_equivalent(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                                      const ConjugatorBudget& budget) {
  if (a.d != b.d)
    throw std::invalid_argument("coorbit_equivalent: groups act in different dimensions");
  EquivalenceVerdict v;

  // dual orbits of shearlet groups always coincide; the diagonal is compared
  // exactly next
  if (a.lambda != b.lambda) {
    v.result = EquivalenceVerdict::Result::not_equivalent;
    v.reason = EquivalenceVerdict::Reason::diagonal_mismatch;
    std::ostringstream os;
    os << "scaling subgroups differ: lambda = (";
    for (std::size_t i = 0; i < a.lambda.size(); ++i)
      os << (i ? "," : "") << format_rational(a.lambda[i]);
    os << ") vs (";
    for (std::size_t i = 0; i < b.lambda.size(); ++i)
      os << (i ? "," : "") << format_rational(b.lambda[i]);
    os << ")";
    v.detail = os.str();
    return v;
  }

  auto search = find_conjugator(a, b, budget);
  if (search.status == ConjugatorResult::Status::not_found) {
    v.result = EquivalenceVerdict::Result::not_equivalent;
    v.reason = EquivalenceVerdict::Reason::algebra_invariant_mismatch;
    v.invariant_tables = {algebra_invariants(a), algebra_invariants(b)};
    v.detail = search.certificate;
    return v;
  }
  if (search.status == ConjugatorResult::Status::indeterminate) {
    v.result = EquivalenceVerdict::Result::indeterminate;
    v.reason = EquivalenceVerdict::Reason::search_exhausted;
    v.detail = search.certificate;
    return v;
  }
  for (const auto& C : search.conjugators) {
    if (commuting_check(C, a, b)) {
      if (!verify_conjugator(C, a, b))
        throw std::logic_error("conjugator failed re-verification");
      v.result = EquivalenceVerdict::Result::equivalent;
      v.reason = EquivalenceVerdict::Reason::conjugator_found;
      v.conjugator = C;
      v.detail = "verified conjugator with commuting scaling action";
      return v;
    }
  }
  v.result = EquivalenceVerdict::Result::indeterminate;
  v.reason = EquivalenceVerdict::Reason::commuting_check_failed;
  v.detail = "conjugators found, but none with commuting scaling action within budget; "
             "non-existence is not certified";
  return v;
}

EquivalenceVerdict general_group_orbit_gate(const Builtin2D& a, const Builtin2D& b,
                                            const ConjugatorBudget& budget) {
  EquivalenceVerdict v;
  if (!orbits_equal(dual_orbit(a), dual_orbit(b))) {
    v.result = EquivalenceVerdict::Result::not_equivalent;
    v.reason = EquivalenceVerdict::Reason::orbit_mismatch;
    v.detail = "dual orbits differ: " + dual_orbit(a).str() + " vs " + dual_orbit(b).str();
    return v;
  }
  if (a.which == Builtin2D::Which::shearlet && b.which == Builtin2D::Which::shearlet)
    return coorbit_equivalent(standard_group(2, {a.c}), standard_group(2, {b.c}), budget);
  // same non-shearlet member on both sides
  v.result = EquivalenceVerdict::Result::equivalent;
  v.reason = EquivalenceVerdict::Reason::same_spec;
  v.detail = "identical groups";
  return v;
}

// --- transfer map and witnesses ---------------------------------------------------------

GroupElement transfer_map(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                          const GroupElement& g) {
  if (a.d != b.d) throw std::invalid_argument("transfer_map: dimension mismatch");
  GroupElement out;
  out.eps = g.eps;
  out.r = g.r;
  out.t.resize(g.t.size());
  for (std::size_t j = 0; j < g.t.size(); ++j)
    out.t[j] = g.t[j] * ExpSum::exp_term(1, g.r * (a.lambda[j] - b.lambda[j]));
  return out;
}

GroupElementF transfer_map(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                           const GroupElementF& g) {
  GroupElementF out;
  out.eps = g.eps;
  out.r = g.r;
  out.t.resize(g.t.size());
  for (std::size_t j = 0; j < g.t.size(); ++j)
    out.t[j] = g.t[j] * std::exp(g.r * to_double(a.lambda[j] - b.lambda[j]));
  return out;
}

WitnessReport nonequivalence_witness(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                                     int index, int cap) {
  if (a.d != b.d) throw std::invalid_argument("nonequivalence_witness: dimension mismatch");
  std::size_t j = static_cast<std::size_t>(index - 2);
  if (index < 2 || j >= a.shear_dim())
    throw std::invalid_argument("witness index must name a shear direction (2..d)");
  if (a.lambda[j] == b.lambda[j])
    throw std::invalid_argument(
        "witness requires differing diagonal exponents at the chosen index");

  WitnessReport rep;
  rep.index = index;
  // the construction degenerates when the source exponent is 1 (the shear
  // coordinate of h^n stays bounded); swap the roles then
  const ShearletGroupSpec* src = &a;
  const ShearletGroupSpec* dst = &b;
  if (a.lambda[j] == 1) {
    std::swap(src, dst);
    rep.swapped = true;
  }
  double delta = to_double(src->lambda[j] - dst->lambda[j]);
  rep.direction = delta > 0 ? 1 : -1;

  std::vector<Rational> shear(src->shear_dim(), Rational(0));
  shear[j] = 1;
  // iterate h(dir, e_j); dir = -1 walks the mirrored sequence, which is the
  // growing direction when the exponent gap is negative
  GroupElement h = make_element(*src, 1, Rational(rep.direction), shear);

  GroupElement cur = identity_element(*src);
  rep.source.push_back(cur);
  std::vector<GroupElement> images{transfer_map(*src, *dst, cur)};
  for (int n2 = 1; n2 <= cap; ++n2) {
    cur = multiply(*src, cur, h);
    rep.source.push_back(cur);
    images.push_back(transfer_map(*src, *dst, cur));
  }
  for (int n2 = 0; n2 < cap; ++n2) {
    GroupElement inc = multiply(*dst, invert(*dst, images[n2]), images[n2 + 1]);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& tcoord : inc.t) worst = std::max(worst, tcoord.log_abs_eval());
    rep.rows.push_back({n2, worst});
  }
  if (rep.rows.size() >= 8 &&
      rep.rows.back().log_image_increment <= rep.rows.front().log_image_increment + 1)
    throw std::logic_error("witness increments fail to grow; degenerate configuration");
  std::ostringstream os;
  os << "transfer-image increments grow without bound (log-magnitudes "
     << rep.rows.front().log_image_increment << " -> " << rep.rows.back().log_image_increment
     << " over n <= " << cap << ")";
  if (rep.swapped) os << "; group roles swapped because the source exponent equals 1";
  rep.summary = os.str();
  return rep;
}

QIReport witness_probe(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                       const WitnessReport& witness, const std::vector<int>& caps) {
  const ShearletGroupSpec* src = witness.swapped ? &b : &a;
  const ShearletGroupSpec* dst = witness.swapped ? &a : &b;
  auto src_ptr = std::make_shared<ShearletGroupSpec>(*src);
  auto dst_ptr = std::make_shared<ShearletGroupSpec>(*dst);
  auto w_src = default_window(*src);
  auto w_dst = default_window(*dst);
  auto src_oracle = std::make_shared<WordBoundOracle>(src_ptr, w_src);
  auto dst_oracle = std::make_shared<WordBoundOracle>(dst_ptr, w_dst);

  std::vector<ProbeInstance> instances;
  for (int cap : caps) {
    if (cap >= static_cast<int>(witness.source.size()))
      throw std::invalid_argument("witness probe cap exceeds the witness table");
    ProbeInstance inst;
    auto pts = std::make_shared<std::vector<GroupElementF>>();
    auto imgs = std::make_shared<std::vector<GroupElementF>>();
    for (int n2 = 0; n2 <= cap; ++n2) {
      pts->push_back(approx(witness.source[n2]));
      imgs->push_back(transfer_map(*src, *dst, pts->back()));
    }
    // source: certified upper bounds via the step metric of the sequence
    // (d(h_m, h_n) <= |m-n| * word cost of one step); image: certified lower
    // bounds. The REJECT detector needs exactly this sidedness to be sound.
    double step_cost = std::max(1.0, src_oracle->dist_upper((*pts)[0], (*pts)[1]));
    inst.X = make_oracle_space(
        pts->size(),
        [step_cost](std::size_t i2, std::size_t j2) {
          return step_cost * std::fabs(static_cast<double>(i2) - static_cast<double>(j2));
        },
        cap, "witness-source(" + src->name + ")");
    inst.Y = make_oracle_space(
        imgs->size(),
        [imgs, dst_oracle](std::size_t i2, std::size_t j2) {
          return dst_oracle->dist_lower((*imgs)[i2], (*imgs)[j2]);
        },
        cap, "witness-image(" + dst->name + ")");
    inst.f.resize(pts->size());
    for (std::size_t i2 = 0; i2 < inst.f.size(); ++i2) inst.f[i2] = i2;
    instances.push_back(std::move(inst));
  }
  QIBudget qb;
  qb.pair_budget = 4096;
  QIReport rep = qi_probe(instances, qb, Exec::serial);
  rep.notes += "; source oracle reports certified upper bounds, image oracle certified "
               "lower bounds (exact for abelian targets)";
  return rep;
}

}  // namespace coarsekit
