// Benchmark comparing the serial reference kernels with their OpenMP twins:
// nerve construction, all-source BFS tables, and probe pair evaluation.

#include <chrono>
#include <cstdio>

#include "coarsekit/lattice.hpp"
#include "coarsekit/metricspace.hpp"
#include "coarsekit/qiprobe.hpp"

using namespace coarsekit;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds(t0, std::chrono::steady_clock::now());
}

}  // namespace

int main() {
  std::printf("workers: %d\n\n", worker_count());
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

  // nerve construction over a 2-d grid covering (pairwise oracle work)
  {
    auto fam = uniform_family(2, Rational(1), Rational(4, 5));
    Covering serial_cov, parallel_cov;
    double ts = timed([&] { serial_cov = fam->materialize(24.0, {}, Exec::serial); });
    double tp = timed([&] { parallel_cov = fam->materialize(24.0, {}, Exec::parallel); });
    bool same = serial_cov.adj == parallel_cov.adj;
    std::printf("%-28s %10.3f %10.3f %7.2fx %s\n", "nerve (2-d grid, oracle)", ts, tp,
                ts / tp, same ? "" : "MISMATCH");
  }

  // all-source BFS over a shearlet lattice
  {
    auto spec = std::make_shared<ShearletGroupSpec>(standard_group(2, {Rational(1, 2)}));
    auto lat = build_lattice(spec, default_window(*spec), default_lattice_params(*spec, 7),
                             Exec::parallel);
    WordMetricLattice lat2 = lat;
    double ts = timed([&] { (void)lat.distance_table(Exec::serial); });
    double tp = timed([&] { (void)lat2.distance_table(Exec::parallel); });
    bool same = lat.distance_table(Exec::serial) == lat2.distance_table(Exec::parallel);
    std::printf("%-28s %10.3f %10.3f %7.2fx %s\n", "all-source BFS (lattice)", ts, tp,
                ts / tp, same ? "" : "MISMATCH");
  }

  // probe pair evaluation on a chain metric
  {
    auto fam = alpha_modulation_family(Rational(1, 2));
    auto cov = std::make_shared<Covering>(fam->materialize(2000.0, {}, Exec::parallel));
    std::vector<FrequencyPoint> pts;
    for (std::size_t i = 0; i < cov->size(); i += 2) pts.push_back(cov->sets[i].anchor());
    std::vector<ProbeInstance> insts(1);
    insts[0].X = make_chain_space(cov, pts, 2000.0);
    insts[0].Y = make_chain_space(cov, pts, 2000.0);
    insts[0].f.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) insts[0].f[i] = i;
    QIBudget qb;
    qb.pair_budget = 3000;
    QIReport rs, rp;
    double ts = timed([&] { rs = qi_probe(insts, qb, Exec::serial); });
    double tp = timed([&] { rp = qi_probe(insts, qb, Exec::parallel); });
    bool same = rs.verdict == rp.verdict && rs.L == rp.L && rs.C == rp.C;
    std::printf("%-28s %10.3f %10.3f %7.2fx %s\n", "probe pair evaluation", ts, tp, ts / tp,
                same ? "" : "MISMATCH");
  }
  return 0;
}
