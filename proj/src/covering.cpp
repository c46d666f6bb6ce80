#include "coarsekit/covering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace coarsekit {

std::vector<int> Covering::incident(const FrequencyPoint& x) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Box& bb = sets[i].bounding_box();
    bool inside_bb = true;
    for (std::size_t j = 0; j < dimension; ++j)
      if (x[j] <= bb.lo[j] || x[j] >= bb.hi[j]) { inside_bb = false; break; }
    if (inside_bb && sets[i].contains(x)) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> Covering::adjacency_with_indeterminate() const {
  auto a = adj;
  for (auto [i, j] : indeterminate) {
    a[i].push_back(j);
    a[j].push_back(i);
  }
  return a;
}

namespace {
std::atomic<bool> g_float_mode{false};
}  // namespace

void set_float_mode(bool on) { g_float_mode.store(on); }
bool float_mode() { return g_float_mode.load(); }

namespace {

// Exact sweep over sorted rational intervals: i~j iff the open hulls overlap.
bool try_interval_sweep(Covering& c) {
  if (g_float_mode.load()) return false;
  std::vector<std::pair<Rational, Rational>> iv(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto h = c.sets[i].exact_interval();
    if (!h) return false;
    iv[i] = *h;
  }
  std::vector<int> order(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return iv[a].first < iv[b].first; });
  c.adj.assign(c.size(), {});
  for (std::size_t a = 0; a < order.size(); ++a) {
    int i = order[a];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      int j = order[b];
      if (!(iv[j].first < iv[i].second)) break;  // sorted: nothing further overlaps
      c.adj[i].push_back(j);
      c.adj[j].push_back(i);
    }
  }
  for (auto& v : c.adj) std::sort(v.begin(), v.end());
  c.indeterminate.clear();
  return true;
}

std::vector<std::pair<int, int>> bbox_candidate_pairs(const std::vector<CoveringSet>& sets) {
  // sweep on axis 0 of the bounding boxes, full bbox test afterwards
  std::vector<int> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sets[a].bounding_box().lo[0] < sets[b].bounding_box().lo[0];
  });
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < order.size(); ++a) {
    int i = order[a];
    double hi0 = sets[i].bounding_box().hi[0];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      int j = order[b];
      if (sets[j].bounding_box().lo[0] >= hi0) break;
      if (!sets[i].bounding_box().disjoint(sets[j].bounding_box()))
        pairs.push_back({std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

void build_nerve(Covering& c, const IntersectBudget& budget, Exec exec) {
  c.adj.assign(c.size(), {});
  c.indeterminate.clear();
  c.nerve_built = true;
  if (c.size() == 0) return;
  if (try_interval_sweep(c)) return;

  auto pairs = bbox_candidate_pairs(c.sets);
  std::vector<TriState> verdicts(pairs.size(), TriState::no);
  parallel_for(pairs.size(), exec, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    verdicts[k] = intersects(c.sets[i], c.sets[j], budget).state;
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    if (verdicts[k] == TriState::yes) {
      c.adj[i].push_back(j);
      c.adj[j].push_back(i);
    } else if (verdicts[k] == TriState::indeterminate) {
      c.indeterminate.push_back({i, j});
    }
  }
  for (auto& v : c.adj) std::sort(v.begin(), v.end());
}

std::vector<int> neighbors(const Covering& c, const std::vector<int>& J, int n) {
  if (!c.nerve_built) throw std::logic_error("nerve not built");
  for (int i : J)
    if (i < 0 || i >= static_cast<int>(c.size()))
      throw std::invalid_argument("neighbors: unknown index " + std::to_string(i));
  std::set<int> cur(J.begin(), J.end());
  for (int step = 0; step < n; ++step) {
    std::set<int> next = cur;
    for (int i : cur)
      for (int j : c.adj[i]) next.insert(j);
    if (next == cur) break;
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

AdmissibilityReport admissibility_constant(const Covering& c) {
  if (!c.nerve_built) throw std::logic_error("nerve not built");
  AdmissibilityReport r;
  r.lower_bound = !c.indeterminate.empty();
  for (std::size_t i = 0; i < c.size(); ++i) {
    int deg = static_cast<int>(c.adj[i].size()) + 1;  // the set meets itself
    if (deg > r.constant) {
      r.constant = deg;
      r.argmax = static_cast<int>(i);
    }
  }
  return r;
}

SubordinationReport subordination_count(const Covering& q, const Covering& p,
                                        const IntersectBudget& budget, Exec exec) {
  if (q.dimension != p.dimension)
    throw std::invalid_argument("subordination_count: dimension mismatch");
  SubordinationReport r;
  r.count_lo.assign(q.size(), 0);
  r.count_hi.assign(q.size(), 0);

  // exact interval fast path
  bool exact1d = !g_float_mode.load();
  std::vector<std::pair<Rational, Rational>> qi(q.size()), pi(p.size());
  for (std::size_t i = 0; i < q.size() && exact1d; ++i) {
    auto h = q.sets[i].exact_interval();
    if (h) qi[i] = *h; else exact1d = false;
  }
  for (std::size_t j = 0; j < p.size() && exact1d; ++j) {
    auto h = p.sets[j].exact_interval();
    if (h) pi[j] = *h; else exact1d = false;
  }
  if (exact1d) {
    std::vector<int> order(p.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pi[a].first < pi[b].first; });
    std::vector<Rational> plo(order.size());
    Rational max_width = 0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      plo[j] = pi[order[j]].first;
      Rational width = pi[order[j]].second - pi[order[j]].first;
      if (width > max_width) max_width = width;
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      int count = 0;
      // candidates: plo in (q.lo - max p width, q.hi)
      Rational from = qi[i].first - max_width;
      auto begin = std::lower_bound(plo.begin(), plo.end(), from);
      auto end = std::lower_bound(plo.begin(), plo.end(), qi[i].second);
      for (auto jt = begin; jt != end; ++jt) {
        int j = order[jt - plo.begin()];
        if (pi[j].first < qi[i].second && qi[i].first < pi[j].second) ++count;
      }
      r.count_lo[i] = r.count_hi[i] = count;
    }
  } else {
    std::vector<char> indet(q.size(), 0);
    parallel_for(q.size(), exec, [&](std::size_t i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (q.sets[i].bounding_box().disjoint(p.sets[j].bounding_box())) continue;
        auto res = intersects(q.sets[i], p.sets[j], budget);
        if (res.state == TriState::yes) {
          r.count_lo[i]++;
          r.count_hi[i]++;
        } else if (res.state == TriState::indeterminate) {
          r.count_hi[i]++;
          indet[i] = 1;
        }
      }
    });
    for (char f : indet) r.has_indeterminate |= f != 0;
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (r.count_lo[i] > r.max_lo) {
      r.max_lo = r.count_lo[i];
      r.argmax = static_cast<int>(i);
    }
    r.max_hi = std::max(r.max_hi, r.count_hi[i]);
  }
  return r;
}

namespace {

// BFS over the nerve from a source index set; distances count edges.
std::vector<long> nerve_bfs(const std::vector<std::vector<int>>& adj,
                            const std::vector<int>& sources) {
  std::vector<long> dist(adj.size(), CHAIN_INF);
  std::deque<int> queue;
  for (int s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (dist[v] != CHAIN_INF) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

long chain_value(const std::vector<std::vector<int>>& adj, const std::vector<int>& sx,
                 const std::vector<int>& sy) {
  auto dist = nerve_bfs(adj, sx);
  long best = CHAIN_INF;
  for (int j : sy)
    if (dist[j] != CHAIN_INF) best = std::min(best, dist[j] + 1);  // sets, not hops
  return best;
}

long hop_value(const std::vector<std::vector<int>>& adj, const std::vector<int>& sx,
               const std::vector<int>& sy) {
  auto dx = nerve_bfs(adj, sx);
  auto dy = nerve_bfs(adj, sy);
  long best = CHAIN_INF;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (dx[i] == CHAIN_INF || dy[i] == CHAIN_INF) continue;
    best = std::min(best, std::max(dx[i], dy[i]));
  }
  return best;
}

}  // namespace

ChainDistance chain_distance(const Covering& c, const FrequencyPoint& x,
                             const FrequencyPoint& y) {
  if (!c.nerve_built) throw std::logic_error("nerve not built");
  if (x == y) return {0, 0};
  auto sx = c.incident(x), sy = c.incident(y);
  if (sx.empty() || sy.empty())
    throw std::invalid_argument("chain_distance: point outside the truncation window");
  ChainDistance d;
  d.hi = chain_value(c.adj, sx, sy);
  d.lo = c.indeterminate.empty()
             ? d.hi
             : chain_value(c.adjacency_with_indeterminate(), sx, sy);
  return d;
}

ChainDistance neighbor_hop_function(const Covering& c, const FrequencyPoint& x,
                                    const FrequencyPoint& y) {
  if (!c.nerve_built) throw std::logic_error("nerve not built");
  if (x == y) return {0, 0};
  auto sx = c.incident(x), sy = c.incident(y);
  if (sx.empty() || sy.empty())
    throw std::invalid_argument("neighbor_hop_function: point outside the truncation window");
  ChainDistance d;
  d.hi = hop_value(c.adj, sx, sy);
  d.lo = c.indeterminate.empty()
             ? d.hi
             : hop_value(c.adjacency_with_indeterminate(), sx, sy);
  return d;
}

WeightFamily intrinsic_weight(const Covering& c, double alpha) {
  WeightFamily w;
  w.alpha = alpha;
  w.value.resize(c.size());
  w.log_value.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    double lv = c.sets[i].volume().log_value() * alpha;
    w.log_value[i] = lv;
    w.value[i] = std::exp(lv);
  }
  return w;
}

ModerationReport is_moderate(const WeightFamily& w, const Covering& c) {
  if (!c.nerve_built) throw std::logic_error("nerve not built");
  if (w.log_value.size() != c.size())
    throw std::invalid_argument("weight family does not match covering");
  ModerationReport r;
  r.has_indeterminate = !c.indeterminate.empty();
  double worst_log = 0;
  auto visit = [&](int i, int j) {
    double dl = std::fabs(w.log_value[i] - w.log_value[j]);
    if (dl > worst_log) {
      worst_log = dl;
      r.worst_edge = {i, j};
    }
  };
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j : c.adj[i])
      if (static_cast<int>(i) < j) visit(static_cast<int>(i), j);
  for (auto [i, j] : c.indeterminate) visit(i, j);
  r.worst_ratio = std::exp(worst_log);
  r.finite = std::isfinite(r.worst_ratio);
  return r;
}

// --- families ---------------------------------------------------------------

namespace {

RatMatrix scalar_matrix(std::size_t d, const Rational& s) {
  RatMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = s;
  return m;
}

class UniformFamily : public CoveringFamily {
 public:
  UniformFamily(std::size_t dim, Rational step, Rational radius)
      : dim_(dim), step_(std::move(step)), radius_(std::move(radius)) {
    if (step_ <= 0 || radius_ <= 0)
      throw std::invalid_argument("uniform covering needs positive step and radius");
  }
  std::string label() const override { return "uniform"; }
  Covering materialize(double R, const IntersectBudget& budget, Exec exec) const override {
    Covering c;
    c.label = label();
    c.dimension = dim_;
    c.window_radius = R;
    long kmax = static_cast<long>(std::floor((R + to_double(radius_)) / to_double(step_)));
    std::vector<long> k(dim_, -kmax);
    while (true) {
      std::vector<Rational> center(dim_);
      for (std::size_t i = 0; i < dim_; ++i) center[i] = step_ * k[i];
      c.sets.push_back(CoveringSet::affine_image(
          scalar_matrix(dim_, 1), center,
          BaseSet::make_ball(std::vector<Rational>(dim_, Rational(0)), radius_)));
      std::ostringstream name;
      name << "k=";
      for (std::size_t i = 0; i < dim_; ++i) name << (i ? "," : "") << k[i];
      c.index_names.push_back(name.str());
      std::size_t axis = 0;
      while (axis < dim_ && k[axis] == kmax) k[axis++] = -kmax;
      if (axis == dim_) break;
      ++k[axis];
    }
    build_nerve(c, budget, exec);
    return c;
  }

 private:
  std::size_t dim_;
  Rational step_, radius_;
};

class DyadicFamily : public CoveringFamily {
 public:
  DyadicFamily(Rational overlap, bool both_signs)
      : overlap_(std::move(overlap)), both_(both_signs) {
    if (overlap_ <= 1)
      throw std::invalid_argument("dyadic covering needs overlap factor > 1 (open bands must meet)");
  }
  std::string label() const override { return both_ ? "dyadic(+/-)" : "dyadic"; }
  Covering materialize(double R, const IntersectBudget& budget, Exec exec) const override {
    if (R <= 2) throw std::invalid_argument("dyadic truncation needs radius > 2");
    Covering c;
    c.label = label();
    c.dimension = 1;
    c.window_radius = R;
    long kmax = static_cast<long>(std::ceil(std::log2(R)));
    long kmin = -kmax;
    auto add = [&](int sign) {
      for (long k = kmin; k <= kmax; ++k) {
        Rational pow2 = k >= 0 ? Rational(BigInt(1) << k) : Rational(1, BigInt(1) << (-k));
        // band around [2^k, 2^{k+1}]: center 3*2^{k-1}, half-width overlap*2^{k-1}
        Rational center = sign * Rational(3, 2) * pow2;
        Rational half = overlap_ * pow2 / 2;
        c.sets.push_back(CoveringSet::affine_image(
            scalar_matrix(1, 1), {center}, BaseSet::make_box({Rational(0)}, {half})));
        c.index_names.push_back((sign > 0 ? "k=" : "-k=") + std::to_string(k));
      }
    };
    add(+1);
    if (both_) add(-1);
    build_nerve(c, budget, exec);
    return c;
  }

 private:
  Rational overlap_;
  bool both_;
};

class AlphaModFamily : public CoveringFamily {
 public:
  AlphaModFamily(Rational alpha, Rational r) : alpha_(std::move(alpha)), r_(std::move(r)) {
    if (alpha_ < 0 || alpha_ >= 1)
      throw std::invalid_argument("alpha-modulation covering needs alpha in [0,1)");
    if (r_ <= 0) throw std::invalid_argument("alpha-modulation covering needs r > 0");
    beta_num_den();
  }
  std::string label() const override {
    return "alpha_modulation(" + format_rational(alpha_) + ")";
  }
  Covering materialize(double R, const IntersectBudget& budget, Exec exec) const override {
    Covering c;
    c.label = label();
    c.dimension = 1;
    c.window_radius = R;
    double beta = to_double(alpha_) / (1 - to_double(alpha_));
    double rd = to_double(r_);
    long kmax = 1;
    while (std::pow(static_cast<double>(kmax), 1 + beta) - rd * std::pow(kmax, beta) < R)
      ++kmax;
    bool exact = beta_is_integer_;
    for (long k = -kmax; k <= kmax; ++k) {
      double ka = std::max<double>(std::labs(k), 1);
      double wb = std::pow(ka, beta);
      if (std::fabs(k * wb) - rd * wb >= R) continue;  // outside the window
      if (exact) {
        Rational w = 1;
        BigInt kb = std::labs(k) == 0 ? BigInt(1) : BigInt(std::labs(k));
        for (long e = 0; e < beta_int_; ++e) w *= Rational(kb);
        c.sets.push_back(CoveringSet::affine_image(
            scalar_matrix(1, 1), {Rational(k) * w},
            BaseSet::make_ball({Rational(0)}, r_ * w)));
      } else {
        Rational center = rational_reconstruct(k * wb, 1000000000LL);
        Rational rad = rational_reconstruct(rd * wb, 1000000000LL);
        c.sets.push_back(CoveringSet::affine_image(
            scalar_matrix(1, 1), {center}, BaseSet::make_ball({Rational(0)}, rad)));
      }
      c.index_names.push_back("k=" + std::to_string(k));
    }
    validate_coverage(c, R);
    build_nerve(c, budget, exec);
    return c;
  }

 private:
  Rational alpha_, r_;
  bool beta_is_integer_ = false;
  long beta_int_ = 0;
  void beta_num_den() {
    Rational beta = alpha_ / (1 - alpha_);
    if (denominator(beta) == 1) {
      beta_is_integer_ = true;
      beta_int_ = numerator(beta).template convert_to<long>();
    }
  }
  static void validate_coverage(const Covering& c, double R) {
    // sweep the interval hulls; any gap strictly inside the window fails
    std::vector<std::pair<double, double>> iv;
    iv.reserve(c.size());
    for (const auto& s : c.sets) {
      auto h = s.exact_interval();
      iv.push_back({to_double(h->first), to_double(h->second)});
    }
    std::sort(iv.begin(), iv.end());
    double covered_to = -R;
    for (auto& [lo, hi] : iv) {
      if (lo > covered_to) {
        std::ostringstream os;
        os << "alpha-modulation covering leaves (" << covered_to << ", " << lo
           << ") uncovered; increase the radius factor";
        throw std::runtime_error(os.str());
      }
      covered_to = std::max(covered_to, hi);
      if (covered_to >= R) return;
    }
    if (covered_to < R)
      throw std::runtime_error("alpha-modulation covering stops short of the window");
  }
};

class ExplicitFamily : public CoveringFamily {
 public:
  ExplicitFamily(std::string label, std::vector<CoveringSet> sets)
      : label_(std::move(label)), sets_(std::move(sets)) {}
  std::string label() const override { return label_; }
  Covering materialize(double R, const IntersectBudget& budget, Exec exec) const override {
    Covering c;
    c.label = label_;
    c.dimension = sets_.empty() ? 1 : sets_[0].dim();
    c.window_radius = R;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      const Box& bb = sets_[i].bounding_box();
      bool meets = true;
      for (std::size_t j = 0; j < c.dimension; ++j)
        if (bb.lo[j] >= R || bb.hi[j] <= -R) meets = false;
      if (meets) {
        c.sets.push_back(sets_[i]);
        c.index_names.push_back("i=" + std::to_string(i));
      }
    }
    build_nerve(c, budget, exec);
    return c;
  }

 private:
  std::string label_;
  std::vector<CoveringSet> sets_;
};

}  // namespace

std::unique_ptr<CoveringFamily> uniform_family(std::size_t dim, Rational step,
                                               Rational radius) {
  return std::make_unique<UniformFamily>(dim, std::move(step), std::move(radius));
}

std::unique_ptr<CoveringFamily> dyadic_family(Rational overlap, bool both_signs) {
  return std::make_unique<DyadicFamily>(std::move(overlap), both_signs);
}

std::unique_ptr<CoveringFamily> alpha_modulation_family(Rational alpha, Rational r) {
  return std::make_unique<AlphaModFamily>(std::move(alpha), std::move(r));
}

std::unique_ptr<CoveringFamily> alpha_modulation_family(Rational alpha) {
  Rational r = 1 + alpha / (1 - alpha);
  return std::make_unique<AlphaModFamily>(std::move(alpha), std::move(r));
}

std::unique_ptr<CoveringFamily> explicit_family(std::string label,
                                                std::vector<CoveringSet> sets) {
  return std::make_unique<ExplicitFamily>(std::move(label), std::move(sets));
}

double closed_form_alpha_distance(double alpha, double s, double t) {
  double a = 1 - alpha;
  double sgn = (s > 0) == (t > 0) ? 1.0 : -1.0;
  return 1 + std::fabs(std::pow(std::fabs(t), a) - sgn * std::pow(std::fabs(s), a));
}

WeakEquivalenceReport weak_equivalence_verdict(const CoveringFamily& q,
                                               const CoveringFamily& p,
                                               const std::vector<double>& radii,
                                               double growth_threshold,
                                               const IntersectBudget& budget, Exec exec) {
  if (radii.size() < 2)
    throw std::invalid_argument("weak_equivalence_verdict needs at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("radii must be strictly increasing");

  WeakEquivalenceReport rep;
  rep.radii = radii;
  for (double R : radii) {
    Covering cq = q.materialize(R, budget, exec);
    Covering cp = p.materialize(R, budget, exec);
    auto qp = subordination_count(cq, cp, budget, exec);
    auto pq = subordination_count(cp, cq, budget, exec);
    rep.n_qp.push_back(qp.max_lo);
    rep.n_pq.push_back(pq.max_lo);
    rep.witness_qp.push_back(qp.argmax);
    rep.witness_pq.push_back(pq.argmax);
    rep.has_indeterminate |= qp.has_indeterminate || pq.has_indeterminate;
  }

  auto grows = [&](const std::vector<int>& n) {
    if (n.size() < 3 || n.front() <= 0) return false;
    for (std::size_t i = 1; i < n.size(); ++i)
      if (n[i] < n[i - 1]) return false;
    return n.back() >= growth_threshold * n.front();
  };
  auto stable = [&](const std::vector<int>& n) {
    int lo = *std::min_element(n.begin(), n.end());
    int hi = *std::max_element(n.begin(), n.end());
    return lo > 0 && hi <= 1.5 * lo;
  };

  int mn = std::min({*std::min_element(rep.n_qp.begin(), rep.n_qp.end()),
                     *std::min_element(rep.n_pq.begin(), rep.n_pq.end())});
  int mx = std::max({*std::max_element(rep.n_qp.begin(), rep.n_qp.end()),
                     *std::max_element(rep.n_pq.begin(), rep.n_pq.end())});
  rep.stability = mn > 0 ? static_cast<double>(mx) / mn : std::numeric_limits<double>::infinity();

  std::ostringstream sum;
  if (grows(rep.n_qp) || grows(rep.n_pq)) {
    rep.verdict = WeakEquivalenceReport::Verdict::not_equivalent;
    rep.growth_direction = grows(rep.n_qp) ? +1 : -1;
    sum << "certified: max subordination count grows monotonically by factor >= "
        << growth_threshold << " across " << radii.size() << " radii in the "
        << (rep.growth_direction > 0 ? "q->p" : "p->q") << " direction";
  } else if (stable(rep.n_qp) && stable(rep.n_pq)) {
    rep.verdict = WeakEquivalenceReport::Verdict::equivalent_evidence;
    sum << "truncation-relative evidence only: subordination counts stable across radii"
        << (rep.has_indeterminate ? " (some pairs undecided)" : "");
  } else {
    rep.verdict = WeakEquivalenceReport::Verdict::indeterminate;
    sum << "counts neither certifiably growing nor stable across the given radii";
  }
  rep.summary = sum.str();
  return rep;
}

std::string nerve_edges_csv(const Covering& c) {
  std::ostringstream os;
  os << "i,j\n";
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j : c.adj[i])
      if (static_cast<int>(i) < j) os << i << "," << j << "\n";
  return os.str();
}

std::string distances_csv(const Covering& c,
                          const std::vector<std::pair<FrequencyPoint, FrequencyPoint>>& pairs) {
  std::ostringstream os;
  for (std::size_t j = 0; j < c.dimension; ++j) os << "x" << j << ",";
  for (std::size_t j = 0; j < c.dimension; ++j) os << "y" << j << ",";
  os << "d_lo,d_hi\n";
  os.precision(17);
  for (const auto& [x, y] : pairs) {
    auto d = chain_distance(c, x, y);
    for (double v : x) os << v << ",";
    for (double v : y) os << v << ",";
    if (d.lo == CHAIN_INF) os << "inf,";
    else os << d.lo << ",";
    if (d.hi == CHAIN_INF) os << "inf\n";
    else os << d.hi << "\n";
  }
  return os.str();
}

}  // namespace coarsekit
