#pragma once

// Data-parallel scans used by the certificate checks and the brute-force
// oracles. Each kernel has an OpenMP implementation and a serial reference
// in kernels::serial with identical results; tests compare the two and
// bench/ times them against each other.

#include <cstdint>
#include <vector>

#include "khom/basis.hpp"
#include "khom/basis_operator.hpp"
#include "khom/graph.hpp"
#include "khom/int_matrix.hpp"

namespace khom::kernels {

/// Diagonal-sign defects of T found in the guard shell of its certificate,
/// in window order. Empty when the certificate holds.
std::vector<BasisPoint> shell_defects(const BasisOperator& t, const SignOperator& f,
                                      const BasisSpace& space, const DefectCertificate& cert);

/// Number of diagonal-sign defects of T among the points of `w`.
std::int64_t window_defect_count(const BasisOperator& t, const SignOperator& f, const Window& w);

/// (i, j) entry = number of length-m paths from vertex i to vertex j.
IntMatrix path_count_matrix(const DirectedGraph& g, int m);

namespace serial {

std::vector<BasisPoint> shell_defects(const BasisOperator& t, const SignOperator& f,
                                      const BasisSpace& space, const DefectCertificate& cert);
std::int64_t window_defect_count(const BasisOperator& t, const SignOperator& f, const Window& w);
IntMatrix path_count_matrix(const DirectedGraph& g, int m);

}  // namespace serial

}  // namespace khom::kernels
