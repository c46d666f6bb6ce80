#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarsekit/linalg.hpp"

namespace coarsekit {

/// Point in the frequency plane.
using FrequencyPoint = std::vector<double>;

/// Axis-aligned box with double endpoints, used for bounding boxes and
/// subdivision cells. Open/closed distinction does not matter at this level.
struct Box {
  std::vector<double> lo, hi;
  std::size_t dim() const { return lo.size(); }
  bool disjoint(const Box& o) const;
  std::optional<Box> intersect(const Box& o) const;
  FrequencyPoint center() const;
  double max_extent() const;
};

/// Base set of a structured covering: an open axis box or an open euclidean
/// ball, with exact rational data.
struct BaseSet {
  enum class Kind { box, ball };
  Kind kind = Kind::box;
  std::vector<Rational> center;
  std::vector<Rational> half;  // box half-widths
  Rational radius;             // ball radius

  static BaseSet make_box(std::vector<Rational> center, std::vector<Rational> half);
  static BaseSet make_ball(std::vector<Rational> center, Rational radius);

  std::size_t dim() const { return center.size(); }
  /// strict interior membership
  bool contains(const std::vector<double>& y) const;
  /// conservative: can the axis box [lo,hi] meet the set?
  bool box_may_intersect(const std::vector<double>& lo, const std::vector<double>& hi) const;
  /// Rational part of the volume (e.g. prod of side lengths, or radius^d);
  /// the dimensional unit-ball constant is tracked separately.
  Rational volume_coeff() const;
};

/// Volume with an exact coefficient and a symbolic unit so that ratios of
/// volumes of sets sharing a base are exact.
struct Volume {
  ExpSum coeff;  // exact; rationals embed
  BaseSet::Kind unit = BaseSet::Kind::box;
  std::size_t dim = 1;
  double value() const;
  double log_value() const;
  /// Exact ratio a/b; throws if the units differ.
  static Rational exact_ratio(const Volume& a, const Volume& b);
};

/// A region of frequency space: either an affine image T*base + b of a base
/// set, or the preimage {x : g^T x in base} of a base set under the dual
/// action of a group element g (stored via its exact matrices).
class CoveringSet {
 public:
  enum class Rep { affine, pullback };

  static CoveringSet affine_image(RatMatrix T, std::vector<Rational> shift, BaseSet base);
  /// mem = g^T (membership map), img = g^{-T} (forward image map, = mem^{-1}),
  /// absdet_g = |det g| as an exact positive scalar.
  static CoveringSet pullback(ExpMatrix mem, ExpMatrix img, ExpSum absdet_g, BaseSet base);

  Rep rep() const { return rep_; }
  std::size_t dim() const { return base_.dim(); }
  const BaseSet& base() const { return base_; }
  const Box& bounding_box() const { return bbox_; }

  bool contains(const FrequencyPoint& x) const;
  /// conservative exclusion test for branch-and-bound cells
  bool cell_may_intersect(const Box& cell) const;
  /// a point guaranteed to lie in the set (image of the base center)
  FrequencyPoint anchor() const;

  Volume volume() const;

  /// Exact open interval hull for 1-d affine sets (box or ball base).
  std::optional<std::pair<Rational, Rational>> exact_interval() const;

  // affine accessors (throws if pullback)
  const RatMatrix& affine_T() const;
  const std::vector<Rational>& affine_shift() const;

 private:
  Rep rep_ = Rep::affine;
  BaseSet base_;
  // affine data
  RatMatrix T_, T_inv_;
  std::vector<Rational> b_;
  // pullback data
  ExpMatrix mem_, img_;
  ExpSum absdet_;
  // caches
  DMatrix mem_d_, img_d_;
  std::vector<double> b_d_;
  Box bbox_;
  void finish();
};

Box bounding_box_of_linear_image(const DMatrix& map, const std::vector<double>& shift,
                                 const BaseSet& base);

}  // namespace coarsekit
