#pragma once

#include <memory>

#include "coarsekit/shearlet.hpp"

namespace coarsekit {

/// Word window: the coordinate box {|r| <= rho, |t_j| <= shear_j}. The word
/// metric uses its symmetrization (box union inverse-of-box).
struct WordWindow {
  Rational rho = Rational(5, 4);
  std::vector<Rational> shear;
};

/// Lattice of points exp(k*delta*Y) * exp(shear with coordinates m*sigma):
/// level spacing delta in r, constant shear spacing sigma across levels
/// (constant spacing is what makes the family U-dense; this is validated by
/// sampling at construction).
struct LatticeParams {
  Rational delta = 1;
  std::vector<Rational> sigma;
  int levels = 4;                    // |k| <= levels
  std::vector<double> shear_extent;  // |t_j| <= shear_extent_j
  bool include_sign = false;         // add the -1 component (no cross edges)
};

struct LatticeCoord {
  int eps = 1;
  int level = 0;
  std::vector<long> m;
  bool operator<(const LatticeCoord& o) const {
    if (eps != o.eps) return eps < o.eps;
    if (level != o.level) return level < o.level;
    return m < o.m;
  }
};

class WordMetricLattice {
 public:
  const ShearletGroupSpec& spec() const { return *spec_; }
  std::shared_ptr<const ShearletGroupSpec> spec_ptr() const { return spec_; }
  const WordWindow& window() const { return window_; }
  const LatticeParams& params() const { return params_; }

  std::size_t size() const { return points_.size(); }
  const std::vector<GroupElement>& points() const { return points_; }
  const std::vector<LatticeCoord>& coords() const { return coords_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }

  int find(const LatticeCoord& c) const;
  /// nearest lattice point by coordinate rounding; -1 if outside truncation
  int snap(const GroupElementF& g) const;

  /// exact membership of g in the symmetrized word window
  bool in_window_sym(const GroupElement& g) const;

  std::vector<long> distances_from(int src) const;
  /// all-pairs BFS table (cached); a parallel kernel over sources
  const std::vector<std::vector<long>>& distance_table(Exec exec = Exec::parallel) const;

  friend WordMetricLattice build_lattice(std::shared_ptr<const ShearletGroupSpec> spec,
                                         WordWindow window, LatticeParams params,
                                         Exec exec, bool brute_force_edges,
                                         std::uint64_t validation_seed);

 private:
  std::shared_ptr<const ShearletGroupSpec> spec_;
  WordWindow window_;
  LatticeParams params_;
  std::vector<GroupElement> points_;
  std::vector<LatticeCoord> coords_;
  std::vector<std::vector<int>> adj_;
  mutable std::vector<std::vector<long>> table_;
};

/// Builds the lattice, its exact adjacency (edge iff x^{-1}y lies in the
/// symmetrized window) and validates separation and empirical denseness;
/// throws listing uncovered samples on failure. Edge discovery scans a
/// candidate range per point (brute_force_edges = true checks all pairs
/// instead; kept as the reference implementation for tests).
WordMetricLattice build_lattice(std::shared_ptr<const ShearletGroupSpec> spec,
                                WordWindow window, LatticeParams params,
                                Exec exec = Exec::parallel, bool brute_force_edges = false,
                                std::uint64_t validation_seed = 7);

WordWindow default_window(const ShearletGroupSpec& spec);
LatticeParams default_lattice_params(const ShearletGroupSpec& spec, int levels);

/// Certified bounds for the word metric of the window on the full group, for
/// scales the materialized lattice cannot reach. Lower bounds come from
/// coordinate-growth inequalities, upper bounds from explicit words; for the
/// abelian case (all lambda_j = 1) the two coincide.
class WordBoundOracle {
 public:
  WordBoundOracle(std::shared_ptr<const ShearletGroupSpec> spec, WordWindow window);
  bool exact() const { return abelian_; }
  double lower(const GroupElementF& g) const;
  double upper(const GroupElementF& g) const;
  double dist_lower(const GroupElementF& a, const GroupElementF& b) const;
  double dist_upper(const GroupElementF& a, const GroupElementF& b) const;

 private:
  std::shared_ptr<const ShearletGroupSpec> spec_;
  WordWindow window_;
  bool abelian_;
  double rho_, wmax_;
  std::vector<double> shear_, weights_;
  double bilinear_norm_;
};

/// Dual covering induced by the group over the lattice: one pullback set
/// h_i^{-T} Q per lattice point, Q a rational box or ball around xi0.
Covering induced_covering(const WordMetricLattice& lattice, const BaseSet& Q,
                          const IntersectBudget& budget = {}, Exec exec = Exec::parallel);
BaseSet default_orbit_base(const ShearletGroupSpec& spec);

/// Covering family materializing induced coverings at growing truncations.
std::unique_ptr<CoveringFamily> induced_family(std::shared_ptr<const ShearletGroupSpec> spec,
                                               WordWindow window, LatticeParams base_params,
                                               BaseSet Q);

}  // namespace coarsekit
