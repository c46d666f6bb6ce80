#pragma once

#include <cstdint>
#include <optional>

#include "coarsekit/geometry.hpp"

namespace coarsekit {

enum class TriState { yes, no, indeterminate };

struct IntersectBudget {
  int depth = 12;          // subdivision depth for certified NO
  int mc_samples = 4096;   // Monte Carlo witness search before subdividing
  std::uint64_t seed = 1;
};

struct IntersectResult {
  TriState state = TriState::indeterminate;
  std::optional<FrequencyPoint> witness;  // present iff state == yes
};

/// Certified-or-indeterminate pairwise intersection test.
///
/// YES is returned only with a witness point contained in both sets. NO is
/// returned only when every subdivision cell of the common bounding box is
/// certifiably disjoint from one of the sets (or the bounding boxes are
/// already disjoint), or when both sets have exact 1-d interval hulls and the
/// open intervals do not overlap. The procedure is symmetric in (a, b) for
/// every budget.
IntersectResult intersects(const CoveringSet& a, const CoveringSet& b,
                           const IntersectBudget& budget = {});

}  // namespace coarsekit
