#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/covering.hpp"
#include "coarsekit/linalg.hpp"

namespace coarsekit {

/// A generalized shearlet dilation group, determined by the diagonal
/// exponents (1, lambda_2, ..., lambda_d) of the scaling generator and the
/// structure constants of the shearing algebra in its canonical basis
/// (X_i X_j = sum_m c_{ij}^m X_m, with X_i^T e_1 = e_i).
struct ShearletGroupSpec {
  std::size_t d = 2;
  std::vector<Rational> lambda;   // lambda_2..lambda_d
  std::vector<RatMatrix> basis;   // canonical matrices X_2..X_d
  // structure[j][k][m], all indices 0-based over the d-1 shear directions
  std::vector<std::vector<std::vector<Rational>>> structure;
  bool sign_component = true;
  std::string kind = "custom";
  std::string name;

  std::size_t shear_dim() const { return d - 1; }
  /// ad-weights w_j = 1 - lambda_j (conjugation by exp(rY) scales the j-th
  /// canonical direction by e^{r w_j})
  std::vector<Rational> weights() const;
  /// |det h(r,t)| = e^{-r * trace}, trace = 1 + sum lambda_j
  Rational trace() const;
  /// coordinates of the product of two shear vectors through the structure
  /// constants: (a*b)_m = sum c_{jk}^m a_j b_k
  template <typename S>
  std::vector<S> shear_product(const std::vector<S>& a, const std::vector<S>& b) const {
    std::vector<S> out(shear_dim(), S(0));
    for (std::size_t j = 0; j < shear_dim(); ++j)
      for (std::size_t k = 0; k < shear_dim(); ++k) {
        for (std::size_t m = 0; m < shear_dim(); ++m) {
          const Rational& c = structure[j][k][m];
          if (c != 0) out[m] += S(c) * a[j] * b[k];
        }
      }
    return out;
  }

  /// Checks every structural invariant exactly: canonical first rows,
  /// commutativity, associativity, graded nilpotency, agreement of the
  /// matrices with the structure constants, and [Y, X_j] = (1-lambda_j) X_j.
  /// Throws with a precise message on the first violation.
  void validate() const;
};

/// Bases (as row matrices over canonical coordinates) of the power spans
/// s^(1) >= s^(2) >= ... of the shearing algebra; stops at the zero span.
std::vector<RatMatrix> power_span_bases(const ShearletGroupSpec& spec);
/// Filtration level of each canonical basis element: max k with X in s^(k).
std::vector<int> filtration_levels(const ShearletGroupSpec& spec);

ShearletGroupSpec standard_group(std::size_t d, std::vector<Rational> lambda);
ShearletGroupSpec toeplitz_group(std::size_t d, const Rational& delta);
/// Dimension-4 family with X2^2 = X4, X2X3 = 0, X3^2 = alpha*X4,
/// alpha in {-1,0,1}; lambda must be compatible (validated).
ShearletGroupSpec d4_family(int alpha, std::vector<Rational> lambda);
/// From raw structure constants; canonical matrices are built as transposed
/// multiplication operators on span{1} + algebra.
ShearletGroupSpec custom_group(std::vector<Rational> lambda,
                               std::vector<std::vector<std::vector<Rational>>> structure,
                               bool sign_component = true);

// --- group elements ----------------------------------------------------------

/// Exact element in coordinates: eps * exp(-rY) * (I + sum t_j X_j)^{-1}.
/// r is rational; shear coordinates live in the exact exponential-sum ring,
/// which is closed under the group operations.
struct GroupElement {
  int eps = 1;
  Rational r;
  std::vector<ExpSum> t;
};

/// Floating flavor for probe-scale work (orbit preimages of arbitrary points).
struct GroupElementF {
  int eps = 1;
  double r = 0;
  std::vector<double> t;
};

GroupElement identity_element(const ShearletGroupSpec& spec);
GroupElement make_element(const ShearletGroupSpec& spec, int eps, Rational r,
                          std::vector<Rational> t);

GroupElement multiply(const ShearletGroupSpec& spec, const GroupElement& a,
                      const GroupElement& b);
GroupElement invert(const ShearletGroupSpec& spec, const GroupElement& a);
ExpMatrix to_matrix(const ShearletGroupSpec& spec, const GroupElement& a);
/// |det| of the matrix realization, an exact monomial e^{-r*trace}
ExpSum abs_determinant(const ShearletGroupSpec& spec, const GroupElement& a);

struct MembershipError : std::runtime_error {
  double residual;
  explicit MembershipError(double res)
      : std::runtime_error("matrix is not in the group (residual " +
                           std::to_string(res) + ")"),
        residual(res) {}
};
/// Coordinates of an exact matrix known to lie in the group; throws
/// MembershipError (with the defect size) otherwise.
GroupElement from_matrix(const ShearletGroupSpec& spec, const ExpMatrix& m);

GroupElementF multiply(const ShearletGroupSpec& spec, const GroupElementF& a,
                       const GroupElementF& b);
GroupElementF invert(const ShearletGroupSpec& spec, const GroupElementF& a);
GroupElementF approx(const GroupElement& g);

// --- dual action --------------------------------------------------------------

/// p(h) = h^{-T} xi0 with xi0 = (1, 0, ..., 0): equals
/// eps * (e^r, e^{lambda_2 r} t_2, ..., e^{lambda_d r} t_d).
std::vector<ExpSum> orbit_point(const ShearletGroupSpec& spec, const GroupElement& g);
FrequencyPoint orbit_point_f(const ShearletGroupSpec& spec, const GroupElementF& g);

/// Exact inverse of the orbit map; requires the first coordinate to be a
/// unit monomial (+-e^x), which holds for every point in the image of
/// orbit_point on exact elements. Returns nullopt otherwise.
std::optional<GroupElement> orbit_preimage(const ShearletGroupSpec& spec,
                                           const std::vector<ExpSum>& x);
/// Floating inverse, defined for any point with x_1 != 0; throws on x_1 == 0
/// (the point is outside the dual orbit).
GroupElementF orbit_preimage_f(const ShearletGroupSpec& spec, const FrequencyPoint& x);

/// g^{-T} as an exact matrix (the dual action of g on frequencies)
ExpMatrix dual_action_matrix(const ShearletGroupSpec& spec, const GroupElement& g);

}  // namespace coarsekit
