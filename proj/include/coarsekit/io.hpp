#pragma once

#include <json.hpp>

#include "coarsekit/equivalence.hpp"
#include "coarsekit/lattice.hpp"

namespace coarsekit {

using Json = nlohmann::json;

// Group spec files: {"schema":1, "kind":"standard|toeplitz|d4|custom",
// "d":..., "lambda":["p/q",...], "delta":"p/q", "alpha":-1|0|1,
// "structure_constants":[[j,k,m,"p/q"],...], "sign_component":bool}
// Rationals are written as "p/q" strings throughout.
Json group_spec_to_json(const ShearletGroupSpec& spec);
ShearletGroupSpec group_spec_from_json(const Json& j);
ShearletGroupSpec load_group_spec(const std::string& path);

// Covering spec files: {"schema":1, "label":..., "dimension":d,
// "kind":"uniform|dyadic|alpha_modulation|explicit|induced",
// "parameters":{...}, "window":{"radius":R}}
struct CoveringSpecFile {
  std::unique_ptr<CoveringFamily> family;
  double default_radius = 0;
  Json raw;
};
CoveringSpecFile covering_family_from_json(const Json& j);
CoveringSpecFile load_covering_family(const std::string& path);

Json verdict_to_json(const EquivalenceVerdict& v);
Json qi_report_to_json(const QIReport& rep);
Json weak_equivalence_to_json(const WeakEquivalenceReport& rep);
Json rat_matrix_to_json(const RatMatrix& m);

}  // namespace coarsekit
