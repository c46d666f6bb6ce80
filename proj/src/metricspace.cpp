#include "coarsekit/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace coarsekit {

namespace {
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

SampledMetricSpace::SampledMetricSpace(std::size_t n,
                                       std::function<double(std::size_t, std::size_t)> dist,
                                       double radius_tag, std::string label)
    : n_(n), dist_(std::move(dist)), radius_(radius_tag), label_(std::move(label)) {}

double SampledMetricSpace::dist(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("metric space point handle out of range");
  if (i == j) return 0;
  return dist_(i, j);
}

void SampledMetricSpace::spot_check(std::uint64_t seed, int triples, double tol) const {
  if (n_ < 2) return;
  std::mt19937_64 rng(seed);
  auto pick = [&] { return static_cast<std::size_t>(u01(rng) * n_) % n_; };
  for (int s = 0; s < triples; ++s) {
    std::size_t i = pick(), j = pick(), k = pick();
    double dij = dist(i, j), dji = dist(j, i);
    if (dij != dji && !(std::fabs(dij - dji) <= tol))
      throw std::runtime_error(label_ + ": distance oracle not symmetric");
    if (i == j && dij != 0)
      throw std::runtime_error(label_ + ": dist(x,x) != 0");
    double dik = dist(i, k), dkj = dist(k, j);
    if (std::isfinite(dik) && std::isfinite(dkj) && dij > dik + dkj + tol)
      throw std::runtime_error(label_ + ": triangle inequality violated on a sampled triple");
  }
}

SampledMetricSpace make_chain_space(std::shared_ptr<const Covering> covering,
                                    std::vector<FrequencyPoint> pts, double radius_tag) {
  struct Cache {
    std::shared_ptr<const Covering> cov;
    std::vector<FrequencyPoint> pts;
    std::vector<std::vector<int>> incident;
    std::map<std::size_t, std::vector<long>> bfs;  // source point -> set distances
    std::mutex mu;
  };
  auto cache = std::make_shared<Cache>();
  cache->cov = std::move(covering);
  cache->pts = std::move(pts);
  cache->incident.resize(cache->pts.size());
  for (std::size_t i = 0; i < cache->pts.size(); ++i) {
    cache->incident[i] = cache->cov->incident(cache->pts[i]);
    if (cache->incident[i].empty())
      throw std::invalid_argument("chain space sample point outside the truncation window");
  }
  std::size_t n = cache->pts.size();
  auto oracle = [cache](std::size_t i, std::size_t j) -> double {
    if (cache->pts[i] == cache->pts[j]) return 0;
    // shortest chain = nerve edge distance from the incident sets of i to
    // those of j, plus one (counting sets)
    std::vector<long> const* dist = nullptr;
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->bfs.find(i);
      if (it == cache->bfs.end()) {
        std::vector<long> d(cache->cov->size(), CHAIN_INF);
        std::deque<int> q;
        for (int s : cache->incident[i]) {
          d[s] = 0;
          q.push_back(s);
        }
        while (!q.empty()) {
          int u = q.front();
          q.pop_front();
          for (int v : cache->cov->adj[u])
            if (d[v] == CHAIN_INF) {
              d[v] = d[u] + 1;
              q.push_back(v);
            }
        }
        it = cache->bfs.emplace(i, std::move(d)).first;
      }
      dist = &it->second;
    }
    long best = CHAIN_INF;
    for (int s : cache->incident[j])
      if ((*dist)[s] != CHAIN_INF) best = std::min(best, (*dist)[s] + 1);
    return best == CHAIN_INF ? DIST_INF : static_cast<double>(best);
  };
  return SampledMetricSpace(n, oracle, radius_tag,
                            "chain(" + cache->cov->label + ")");
}

SampledMetricSpace make_lattice_space(std::shared_ptr<const WordMetricLattice> lattice,
                                      std::vector<int> point_indices, double radius_tag,
                                      Exec exec) {
  auto idx = std::make_shared<std::vector<int>>(std::move(point_indices));
  const auto& table = lattice->distance_table(exec);
  (void)table;
  auto oracle = [lattice, idx, exec](std::size_t i, std::size_t j) -> double {
    long d = lattice->distance_table(exec)[(*idx)[i]][(*idx)[j]];
    return d == CHAIN_INF ? DIST_INF : static_cast<double>(d);
  };
  return SampledMetricSpace(idx->size(), oracle, radius_tag,
                            "word(" + lattice->spec().name + ")");
}

SampledMetricSpace make_oracle_space(std::size_t n,
                                     std::function<double(std::size_t, std::size_t)> oracle,
                                     double radius_tag, std::string label) {
  return SampledMetricSpace(n, std::move(oracle), radius_tag, std::move(label));
}

ClosenessReport closeness(const std::vector<SampledMetricSpace>& Y_per_radius,
                          const std::vector<std::vector<std::size_t>>& f_per_radius,
                          const std::vector<std::vector<std::size_t>>& g_per_radius) {
  if (Y_per_radius.size() != f_per_radius.size() ||
      Y_per_radius.size() != g_per_radius.size() || Y_per_radius.empty())
    throw std::invalid_argument("closeness: per-radius inputs misaligned");
  ClosenessReport rep;
  for (std::size_t r = 0; r < Y_per_radius.size(); ++r) {
    const auto& Y = Y_per_radius[r];
    const auto& f = f_per_radius[r];
    const auto& g = g_per_radius[r];
    if (f.size() != g.size()) throw std::invalid_argument("closeness: map sizes differ");
    double mx = 0;
    for (std::size_t i = 0; i < f.size(); ++i) mx = std::max(mx, Y.dist(f[i], g[i]));
    rep.radii.push_back(Y.radius());
    rep.max_dist.push_back(mx);
  }
  double first = rep.max_dist.front(), last = rep.max_dist.back();
  rep.close = std::isfinite(last) && last <= std::max(first * 1.5, first + 2.0);
  std::ostringstream os;
  os << "sup distance per radius:";
  for (double v : rep.max_dist) os << " " << v;
  os << (rep.close ? " (stable: maps are close on the sample)"
                   : " (growing: maps are not close)");
  rep.summary = os.str();
  return rep;
}

GeodesicReport large_scale_geodesic_check(const SampledMetricSpace& X, double c,
                                          std::size_t pair_budget, std::uint64_t seed) {
  if (c <= 0) throw std::invalid_argument("large_scale_geodesic_check needs c > 0");
  GeodesicReport rep;
  std::mt19937_64 rng(seed);
  std::size_t n = X.size();
  if (n < 2) {
    rep.ok = true;
    rep.summary = "trivial sample";
    return rep;
  }
  double tol = 1e-9;
  std::vector<std::pair<double, double>> data;  // (d, chain length)
  for (std::size_t s = 0; s < pair_budget; ++s) {
    std::size_t i = static_cast<std::size_t>(u01(rng) * n) % n;
    std::size_t j = static_cast<std::size_t>(u01(rng) * n) % n;
    if (i == j) continue;
    double dij = X.dist(i, j);
    if (!std::isfinite(dij)) continue;  // across components: excluded
    std::size_t cur = i;
    int steps = 0;
    bool failed = false;
    while (cur != j) {
      double dcur = X.dist(cur, j);
      if (dcur <= c + tol) {
        ++steps;
        break;  // one final c-step reaches j
      }
      std::size_t best = cur;
      double best_rem = dcur;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == cur) continue;
        if (X.dist(cur, k) > c + tol) continue;
        double rem = X.dist(k, j);
        if (rem < best_rem - tol) {
          best_rem = rem;
          best = k;
        }
      }
      if (best == cur) {
        failed = true;
        break;
      }
      cur = best;
      ++steps;
      if (steps > static_cast<int>(4 * n)) {
        failed = true;
        break;
      }
    }
    ++rep.pairs_checked;
    if (failed) {
      ++rep.failures;
      continue;
    }
    data.push_back({dij, static_cast<double>(steps)});
  }
  double a = 0;
  for (auto& [d, m] : data)
    if (d > 0) a = std::max(a, m / d);
  double b = 0;
  for (auto& [d, m] : data) b = std::max(b, m - a * d);
  rep.a = a;
  rep.b = b;
  rep.ok = rep.failures == 0 && !data.empty();
  std::ostringstream os;
  if (rep.ok)
    os << "chains fit n <= " << a << " d + " << b << " on " << data.size() << " pairs";
  else
    os << rep.failures << "/" << rep.pairs_checked
       << " chain constructions failed (indeterminate)";
  rep.summary = os.str();
  return rep;
}

}  // namespace coarsekit
