#include "coarsekit/intersect.hpp"

#include <cmath>
#include <deque>
#include <random>

namespace coarsekit {

namespace {

inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool in_both(const CoveringSet& a, const CoveringSet& b, const FrequencyPoint& x) {
  return a.contains(x) && b.contains(x);
}

}  // namespace

IntersectResult intersects(const CoveringSet& a, const CoveringSet& b,
                           const IntersectBudget& budget) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("intersects: dimension mismatch");
  std::size_t d = a.dim();

  // exact interval fast path (1-d affine sets)
  auto ia = a.exact_interval(), ib = b.exact_interval();
  if (ia && ib) {
    if (ia->first < ib->second && ib->first < ia->second) {
      Rational lo = std::max(ia->first, ib->first);
      Rational hi = std::min(ia->second, ib->second);
      FrequencyPoint w{to_double((lo + hi) / 2)};
      return {TriState::yes, w};
    }
    return {TriState::no, std::nullopt};
  }

  auto region = a.bounding_box().intersect(b.bounding_box());
  if (!region) return {TriState::no, std::nullopt};

  // deterministic witness candidates first
  for (const FrequencyPoint& cand :
       {a.anchor(), b.anchor(), region->center()}) {
    if (in_both(a, b, cand)) return {TriState::yes, cand};
  }

  // seeded Monte Carlo witness search over the common bounding box
  std::mt19937_64 rng(budget.seed);
  for (int s = 0; s < budget.mc_samples; ++s) {
    FrequencyPoint x(d);
    for (std::size_t i = 0; i < d; ++i)
      x[i] = region->lo[i] + (region->hi[i] - region->lo[i]) * u01(rng);
    if (in_both(a, b, x)) return {TriState::yes, x};
  }

  // branch and bound: discard cells certifiably missing one of the sets
  struct Cell { Box box; int depth; };
  std::deque<Cell> work{{*region, 0}};
  bool uncertain = false;
  while (!work.empty()) {
    Cell cell = work.front();
    work.pop_front();
    if (!a.cell_may_intersect(cell.box) || !b.cell_may_intersect(cell.box)) continue;
    FrequencyPoint c = cell.box.center();
    if (in_both(a, b, c)) return {TriState::yes, c};
    if (cell.depth >= budget.depth) {
      uncertain = true;
      continue;
    }
    std::size_t axis = 0;
    double widest = 0;
    for (std::size_t i = 0; i < d; ++i) {
      double w = cell.box.hi[i] - cell.box.lo[i];
      if (w > widest) { widest = w; axis = i; }
    }
    double mid = 0.5 * (cell.box.lo[axis] + cell.box.hi[axis]);
    Box left = cell.box, right = cell.box;
    left.hi[axis] = mid;
    right.lo[axis] = mid;
    work.push_back({left, cell.depth + 1});
    work.push_back({right, cell.depth + 1});
  }
  if (!uncertain) return {TriState::no, std::nullopt};
  return {TriState::indeterminate, std::nullopt};
}

}  // namespace coarsekit
