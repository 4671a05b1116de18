#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "khom/int_matrix.hpp"

namespace khom {

/// U * A * V = D with U, V unimodular and D diagonal in divisibility-chain
/// form (nonnegative, d_1 | d_2 | ..., zeros trailing). The inverses of the
/// transforms are tracked alongside so that cokernel coordinates and
/// generators can be read off without a second inversion.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix V;
  IntMatrix V_inv;
  IntMatrix D;
  std::size_t rank = 0;

  /// d_1, ..., d_min(rows, cols), including trailing zeros.
  IntVector diagonal() const;
};

/// Deterministic: the pivot is the smallest nonzero |entry| of the active
/// submatrix, ties broken row-major.
SmithDecomposition smith(const IntMatrix& a);

/// Z-basis of {x : A x = 0}.
std::vector<IntVector> kernel_basis(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

}  // namespace khom
