#pragma once

// JSON reports consumed by the CLI. Arbitrary-precision integers are emitted
// as decimal strings; machine-size indices and ranks as JSON numbers.

#include <json.hpp>

#include "khom/abelian_group.hpp"
#include "khom/fredholm.hpp"
#include "khom/graph.hpp"
#include "khom/lens.hpp"

namespace khom {

nlohmann::json to_json(const IntVector& v);
nlohmann::json to_json(const AbelianGroupPresentation& gp);
nlohmann::json to_json(const StarReport& r);
nlohmann::json to_json(const LensReport& r);

/// K_0 = coker d, K_1 = ker d of the vertex complex.
nlohmann::json kgroups_report(const DirectedGraph& g);
/// K^0 = ker of the dual boundary, K^1 = its cokernel.
nlohmann::json khomology_report(const DirectedGraph& g);
/// Builds the graded module, its index function and perturbation ranks.
nlohmann::json k0_module_report(const DirectedGraph& g, const VertexFunction& eta);
/// Builds the odd module (or takes one), checks the star condition and
/// reports indices and commutator ranks.
nlohmann::json k1_module_report(const DirectedGraph& g, const VertexFunction& eta);
nlohmann::json k1_module_report(const DirectedGraph& g, const OddModule& m);

/// Human-readable rendering of a group: "Z + Z/3" and one generator per line.
std::string group_text(const std::string& label, const AbelianGroupPresentation& gp);

}  // namespace khom
