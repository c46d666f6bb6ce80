#pragma once

#include <optional>

#include "coarsekit/qiprobe.hpp"
#include "coarsekit/shearlet.hpp"

namespace coarsekit {

// --- dual orbits ---------------------------------------------------------------

struct OrbitDescriptor {
  enum class Kind {
    punctured_space,    // R^d \ {0}
    halfline_product,   // R* x R^{d-1}
    orthant_union,      // (R*)^d
  };
  Kind kind = Kind::halfline_product;
  std::size_t dim = 2;
  bool operator==(const OrbitDescriptor& o) const = default;
  std::string str() const;
};

OrbitDescriptor dual_orbit(const ShearletGroupSpec& spec);
bool orbits_equal(const OrbitDescriptor& a, const OrbitDescriptor& b);

/// The classified two-dimensional dilation groups used by the orbit gate.
struct Builtin2D {
  enum class Which { diagonal, similitude, shearlet };
  Which which = Which::shearlet;
  Rational c;  // anisotropy exponent for the shearlet member
  std::string str() const;
};
OrbitDescriptor dual_orbit(const Builtin2D& g);

// --- algebra invariants -----------------------------------------------------------

struct AlgebraInvariants {
  std::vector<std::size_t> power_dims;  // dim s^(2), s^(3), ...
  std::size_t annihilator_dim = 0;
  std::size_t nilpotency_index = 0;  // smallest k with s^(k) = 0
  // signature data of X -> X^2 into s^(2), defined when dim s^(2) == 1:
  // (rank, |positives - negatives|); invariant under basis change and the
  // sign ambiguity of the target generator
  std::optional<std::pair<int, int>> square_form;
  bool operator==(const AlgebraInvariants& o) const = default;
  std::string str() const;
};

AlgebraInvariants algebra_invariants(const ShearletGroupSpec& spec);

// --- conjugators ---------------------------------------------------------------------

struct ConjugatorBudget {
  int seeds = 200;
  double tol = 1e-10;
  long long max_denominator = 1000000;
  std::uint64_t seed = 41;
  int max_found = 4;
};

struct ConjugatorResult {
  enum class Status { found, not_found, indeterminate };
  Status status = Status::indeterminate;
  std::vector<RatMatrix> conjugators;   // exactly verified C with C^{-1} S C = S'
  std::vector<RatMatrix> algebra_isos;  // matching algebra isomorphism matrices
  std::string certificate;              // for not_found: the invariant mismatch
  int seeds_used = 0;
  int converged = 0;            // seeds reaching a numeric solution
  int rationalized = 0;         // numeric solutions snapped to exact rationals
};

/// Search for C in GL(d) with C^{-1} S C = S'. Invariant filtering produces
/// certified negatives; the multistart solve over the structure-constant
/// matching equations produces candidates which are reconstructed as exact
/// rationals and verified before being reported.
ConjugatorResult find_conjugator(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                                 const ConjugatorBudget& budget = {});

/// Exact check that C^{-1} X C lands in the span of b's canonical basis for
/// every canonical X of a, with invertible coordinate matrix; returns the
/// algebra isomorphism matrix on success.
std::optional<RatMatrix> verify_conjugator(const RatMatrix& C, const ShearletGroupSpec& a,
                                           const ShearletGroupSpec& b);

/// Exact commuting test for the scaling and conjugation actions: the
/// infinitesimal identity [Y, C^{-1} X_j C] = C^{-1} [Y, X_j] C for all j,
/// cross-checked against the finite-scale identity
/// d^{-1} C^{-1} s C d = C^{-1} d^{-1} s d C at sampled rational scales.
/// Requires equal diagonals.
bool commuting_check(const RatMatrix& C, const ShearletGroupSpec& a,
                     const ShearletGroupSpec& b);

// --- the decision pipeline ------------------------------------------------------------

struct EquivalenceVerdict {
  enum class Result { equivalent, not_equivalent, indeterminate };
  enum class Reason {
    orbit_mismatch,
    diagonal_mismatch,
    algebra_invariant_mismatch,
    conjugator_found,
    commuting_check_failed,
    search_exhausted,
    same_spec,
  };
  Result result = Result::indeterminate;
  Reason reason = Reason::search_exhausted;
  std::optional<RatMatrix> conjugator;
  std::optional<std::pair<AlgebraInvariants, AlgebraInvariants>> invariant_tables;
  std::string detail;
  static std::string reason_name(Reason r);
};

EquivalenceVerdict coorbit_equivalent(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                                      const ConjugatorBudget& budget = {});

/// Orbit gate for the classified 2-d groups: distinct orbits certify
/// NOT-EQUIVALENT; two shearlet members defer to the algebraic pipeline.
EquivalenceVerdict general_group_orbit_gate(const Builtin2D& a, const Builtin2D& b,
                                            const ConjugatorBudget& budget = {});

// --- transfer map and witnesses ----------------------------------------------------------

/// phi = (orbit map of b)^{-1} o (orbit map of a), in coordinates:
/// (eps, r, t_j) -> (eps, r, e^{r(lambda_j - lambda'_j)} t_j). Exact.
GroupElement transfer_map(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                          const GroupElement& g);
GroupElementF transfer_map(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                           const GroupElementF& g);

struct WitnessRow {
  int n;
  double log_image_increment;  // log |shear coordinate| of (h'_n)^{-1} h'_{n+1}
};

struct WitnessReport {
  int index = 0;          // differing diagonal exponent (canonical label)
  bool swapped = false;   // roles of the groups exchanged (lambda_i = 1 case)
  int direction = 1;      // iterate h^{+n} or h^{-n}
  std::vector<WitnessRow> rows;
  std::vector<GroupElement> source;  // h_n in the (possibly swapped) source group
  std::string summary;
};

/// Sequence h_n with bounded source increments whose transfer images have
/// increments growing without bound; requires lambda_i != lambda'_i.
WitnessReport nonequivalence_witness(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                                     int index, int cap = 60);

/// Runs the quasi-isometry prober on the witness sequence: the source side
/// uses a certified upper-bound word oracle, the image side a certified
/// lower-bound (exact in the abelian case), so a REJECT verdict is sound.
QIReport witness_probe(const ShearletGroupSpec& a, const ShearletGroupSpec& b,
                       const WitnessReport& witness, const std::vector<int>& caps = {15, 30, 60});

}  // namespace coarsekit
