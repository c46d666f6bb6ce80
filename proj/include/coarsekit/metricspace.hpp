#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "coarsekit/covering.hpp"
#include "coarsekit/lattice.hpp"

namespace coarsekit {

constexpr double DIST_INF = std::numeric_limits<double>::infinity();

/// Finite sample of a metric space: opaque point handles plus a total
/// symmetric distance oracle (values in [0, inf]). Construction spot-checks
/// the metric axioms on seeded triples.
class SampledMetricSpace {
 public:
  SampledMetricSpace() = default;
  SampledMetricSpace(std::size_t n, std::function<double(std::size_t, std::size_t)> dist,
                     double radius_tag, std::string label);

  std::size_t size() const { return n_; }
  double radius() const { return radius_; }
  const std::string& label() const { return label_; }
  double dist(std::size_t i, std::size_t j) const;

  /// throws when a seeded spot check finds a metric violation
  void spot_check(std::uint64_t seed = 11, int triples = 200, double tol = 1e-9) const;

 private:
  std::size_t n_ = 0;
  std::function<double(std::size_t, std::size_t)> dist_;
  double radius_ = 0;
  std::string label_;
};

/// Chain-metric sample over a covering; distances via multi-source BFS on the
/// nerve with per-source caching (certified edges only).
SampledMetricSpace make_chain_space(std::shared_ptr<const Covering> covering,
                                    std::vector<FrequencyPoint> pts, double radius_tag);

/// Word-metric sample over a lattice (graph distances).
SampledMetricSpace make_lattice_space(std::shared_ptr<const WordMetricLattice> lattice,
                                      std::vector<int> point_indices, double radius_tag,
                                      Exec exec = Exec::parallel);

/// Sample with an explicit oracle (used by the witness pipeline, where the
/// oracle provides certified word-metric bounds).
SampledMetricSpace make_oracle_space(std::size_t n,
                                     std::function<double(std::size_t, std::size_t)> oracle,
                                     double radius_tag, std::string label);

struct ClosenessReport {
  std::vector<double> radii;
  std::vector<double> max_dist;
  bool close = false;
  std::string summary;
};

/// sup over the sample of d_Y(f(x), g(x)) per radius; close iff the bound is
/// stable across radii instead of growing.
ClosenessReport closeness(const std::vector<SampledMetricSpace>& Y_per_radius,
                          const std::vector<std::vector<std::size_t>>& f_per_radius,
                          const std::vector<std::vector<std::size_t>>& g_per_radius);

struct GeodesicReport {
  bool ok = false;
  double a = 0, b = 0;
  int pairs_checked = 0;
  int failures = 0;  // chain construction failures -> indeterminate
  std::string summary;
};

/// Greedy c-step chains between sampled pairs through the sample
/// (nearest-progress); reports the fitted affine bound n <= a d + b.
/// Pairs at infinite distance are skipped (componentwise contract).
GeodesicReport large_scale_geodesic_check(const SampledMetricSpace& X, double c,
                                          std::size_t pair_budget = 512,
                                          std::uint64_t seed = 17);

}  // namespace coarsekit
