#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "coarsekit/intersect.hpp"
#include "coarsekit/parallel.hpp"

namespace coarsekit {

constexpr long CHAIN_INF = std::numeric_limits<long>::max();

/// Finite truncation of an indexed covering family together with its nerve:
/// an edge per certified intersection, plus the list of pairs the oracle
/// could not decide within budget.
struct Covering {
  std::string label;
  std::size_t dimension = 1;
  double window_radius = 0;
  std::vector<CoveringSet> sets;
  std::vector<std::string> index_names;

  std::vector<std::vector<int>> adj;                 // certified YES edges
  std::vector<std::pair<int, int>> indeterminate;    // undecided pairs
  bool nerve_built = false;

  std::size_t size() const { return sets.size(); }
  /// indices of sets containing x; empty means x is outside the truncation
  std::vector<int> incident(const FrequencyPoint& x) const;
  /// adjacency with indeterminate pairs added as edges (optimistic nerve)
  std::vector<std::vector<int>> adjacency_with_indeterminate() const;
};

/// Builds the nerve in place. Uses the exact interval sweep when every set
/// has an exact 1-d hull, otherwise the pairwise oracle behind a bounding-box
/// prefilter. The pairwise loop is a parallel kernel.
void build_nerve(Covering& c, const IntersectBudget& budget = {}, Exec exec = Exec::parallel);

/// Arithmetic mode: float mode routes everything through the numeric oracle,
/// skipping the exact rational fast paths (useful to cross-check them).
void set_float_mode(bool on);
bool float_mode();

// --- neighbor combinatorics ---------------------------------------------

/// J^{n*}: iterated set of neighbors of the index set J.
std::vector<int> neighbors(const Covering& c, const std::vector<int>& J, int n);

struct AdmissibilityReport {
  int constant = 0;          // max #neighbors including the set itself
  bool lower_bound = false;  // true when indeterminate pairs exist
  int argmax = -1;
};
AdmissibilityReport admissibility_constant(const Covering& c);

struct SubordinationReport {
  std::vector<int> count_lo;  // certified counts per index of q
  std::vector<int> count_hi;  // counts with indeterminate pairs included
  int max_lo = 0, max_hi = 0;
  int argmax = -1;
  bool has_indeterminate = false;
};
/// For each set of q, how many sets of p it meets (N(q, p) data).
SubordinationReport subordination_count(const Covering& q, const Covering& p,
                                        const IntersectBudget& budget = {},
                                        Exec exec = Exec::parallel);

// --- metrics --------------------------------------------------------------

struct ChainDistance {
  long lo = 0;  // with indeterminate pairs as edges
  long hi = 0;  // certified edges only
  bool exact() const { return lo == hi; }
};

/// Length of the shortest chain of pairwise-overlapping sets joining x to y
/// (0 iff x == y; CHAIN_INF when no chain exists inside the truncation).
ChainDistance chain_distance(const Covering& c, const FrequencyPoint& x,
                             const FrequencyPoint& y);

/// The neighbor-hop quantity inf{ n : x, y lie in a common n-fold neighbor
/// union }. Not a metric; kept to reproduce its triangle-inequality failure.
ChainDistance neighbor_hop_function(const Covering& c, const FrequencyPoint& x,
                                    const FrequencyPoint& y);

// --- weights ---------------------------------------------------------------

struct WeightFamily {
  std::vector<double> value;
  std::vector<double> log_value;
  double alpha = 0;  // set when intrinsic
};

/// u_i = |Q_i|^alpha
WeightFamily intrinsic_weight(const Covering& c, double alpha);

struct ModerationReport {
  double worst_ratio = 1.0;
  std::pair<int, int> worst_edge{-1, -1};
  bool finite = true;
  bool has_indeterminate = false;
};
ModerationReport is_moderate(const WeightFamily& w, const Covering& c);

// --- constructors -----------------------------------------------------------

class CoveringFamily {
 public:
  virtual ~CoveringFamily() = default;
  virtual Covering materialize(double radius, const IntersectBudget& budget = {},
                               Exec exec = Exec::parallel) const = 0;
  virtual std::string label() const = 0;
};

/// Balls B(k*step, radius), k in Z^d, truncated to the window |x_i| < R.
std::unique_ptr<CoveringFamily> uniform_family(std::size_t dim, Rational step,
                                               Rational radius);

/// Octave bands B(3*2^{k-1}, overlap*2^{k-1}) covering (0,inf), optionally
/// mirrored to cover R^*. Truncation keeps bands meeting (1/R, R).
std::unique_ptr<CoveringFamily> dyadic_family(Rational overlap = Rational(9, 8),
                                              bool both_signs = false);

/// 1-d alpha-modulation covering: balls B(k|k|^beta, r|k|^beta) with
/// beta = alpha/(1-alpha); k = 0 gets B(0, r). Coverage of the window is
/// validated (exact sweep for rational endpoints, numeric otherwise) and a
/// failure throws.
std::unique_ptr<CoveringFamily> alpha_modulation_family(Rational alpha, Rational r);
/// default radius factor 1 + beta, above the covering threshold
std::unique_ptr<CoveringFamily> alpha_modulation_family(Rational alpha);

std::unique_ptr<CoveringFamily> explicit_family(std::string label,
                                                std::vector<CoveringSet> sets);

/// The comparison quantity 1 + | |t|^{1-a} - sign(st)|s|^{1-a} | that the
/// alpha-modulation chain metric is equivalent to.
double closed_form_alpha_distance(double alpha, double s, double t);

// --- weak equivalence -------------------------------------------------------

struct WeakEquivalenceReport {
  enum class Verdict { equivalent_evidence, not_equivalent, indeterminate };
  Verdict verdict = Verdict::indeterminate;
  std::vector<double> radii;
  std::vector<int> n_qp, n_pq;        // certified max subordination counts
  std::vector<int> witness_qp, witness_pq;  // argmax indices per radius
  int growth_direction = 0;           // +1: q->p grew, -1: p->q grew
  double stability = 0;               // max/min ratio of counts across radii
  bool has_indeterminate = false;
  std::string summary;
};

/// NOT-EQUIVALENT is asserted only on certified monotone growth of the
/// subordination counts across the radii (factor >= growth_threshold);
/// EQUIVALENT is always truncation-relative evidence, never a proof.
WeakEquivalenceReport weak_equivalence_verdict(const CoveringFamily& q,
                                               const CoveringFamily& p,
                                               const std::vector<double>& radii,
                                               double growth_threshold = 2.0,
                                               const IntersectBudget& budget = {},
                                               Exec exec = Exec::parallel);

// --- export ------------------------------------------------------------------

std::string nerve_edges_csv(const Covering& c);
std::string distances_csv(const Covering& c,
                          const std::vector<std::pair<FrequencyPoint, FrequencyPoint>>& pairs);

}  // namespace coarsekit
