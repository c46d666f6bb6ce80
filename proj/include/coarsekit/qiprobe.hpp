#pragma once

#include <array>

#include "coarsekit/metricspace.hpp"

namespace coarsekit {

struct QIBudget {
  std::size_t pair_budget = 4096;
  std::uint64_t seed = 1;
  double growth_factor = 2.0;   // envelope must grow by this across the radii
  int min_radii = 3;            // before REJECT may be asserted
  double stability_factor = 1.5;
  int near_range = 3;           // all pairs at source distance <= this are kept
};

struct EnvelopeRow {
  long bin = 0;          // integer source-distance bin
  double ymin = 0, ymax = 0;
  std::size_t count = 0;
  std::pair<std::size_t, std::size_t> argmax{0, 0};
};

struct RadiusEnvelope {
  double radius = 0;
  std::vector<EnvelopeRow> rows;
  double L = 1, C = 0, K = 0;  // per-radius fitted constants
};

struct QIReport {
  enum class Verdict { embedding_evidence, reject, indeterminate };
  Verdict verdict = Verdict::indeterminate;
  std::string reason;
  std::vector<RadiusEnvelope> envelopes;
  double L = 1, C = 0, K = 0;  // final fitted constants (worst radius)
  // REJECT witnesses: (radius, source distance, image distance)
  std::vector<std::array<double, 3>> witnesses;
  std::string notes;  // verdict semantics statement, embedded in every report
};

/// One probe instance per truncation radius: the source and target samples
/// and the index map realizing f on them.
struct ProbeInstance {
  SampledMetricSpace X, Y;
  std::vector<std::size_t> f;
};

/// Empirical quasi-isometry prober. REJECT is certified by monotone growth
/// of a distance envelope across the radii (bounded source distances mapped
/// to growing image distances, or the mirrored lower-envelope failure);
/// EMBEDDING-EVIDENCE is evidence only, never a proof: quasi-isometry is an
/// asymptotic property and a finite probe can only reject.
QIReport qi_probe(const std::vector<ProbeInstance>& per_radius, const QIBudget& budget = {},
                  Exec exec = Exec::parallel);

std::string qi_report_csv(const QIReport& rep);

}  // namespace coarsekit
