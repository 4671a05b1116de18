#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khom/int_matrix.hpp"
#include "khom/smith.hpp"

namespace khom {

/// Finitely generated abelian group Z/d_1 + ... + Z/d_k + Z^f, realised as a
/// quotient (cokernel) or subgroup (kernel) of a named ambient lattice.
///
/// Group coordinates are ordered torsion first, then free. `reduce` maps an
/// ambient vector to those coordinates, torsion entries normalised to
/// [0, d_i). Generator i is an ambient vector with reduce(generator_i) = e_i.
class AbelianGroupPresentation {
 public:
  enum class Kind { Cokernel, Kernel };

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  std::size_t coordinate_count() const { return torsion_.size() + free_rank_; }
  bool is_trivial() const { return coordinate_count() == 0; }

  const std::vector<std::string>& ambient_basis() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  Kind kind() const { return kind_; }

  /// Throws std::invalid_argument on a dimension mismatch, or (kernels) when
  /// `x` is not an element of the subgroup.
  IntVector reduce(const IntVector& x) const;

  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const;

  /// Least k >= 1 with k*x = 0, or nullopt when x has infinite order.
  std::optional<mpz_class> order(const IntVector& x) const;

  /// True iff the classes of `elements` generate the whole group.
  bool generated_by(const std::vector<IntVector>& elements) const;

  /// "Z^f + Z/d1 + Z/d2 ..." ("0" for the trivial group).
  std::string structure_string() const;
  /// Same group written with prime-power torsion factors.
  std::string primary_string() const;
  /// Ambient-basis expression of generator i, e.g. "v1 - 2 v3".
  std::string generator_expression(std::size_t i) const;

 private:
  friend AbelianGroupPresentation cokernel(const IntMatrix&, std::vector<std::string>);
  friend AbelianGroupPresentation kernel(const IntMatrix&, std::vector<std::string>);

  Kind kind_ = Kind::Cokernel;
  std::vector<std::string> ambient_;
  IntVector torsion_;
  std::size_t free_rank_ = 0;
  std::vector<IntVector> generators_;
  // Rows of the coordinate transform, one per group coordinate.
  std::vector<IntVector> coordinate_rows_;
  // Kernel only: rows that must vanish for membership.
  std::vector<IntVector> membership_rows_;
};

/// coker A = Z^rows / A Z^cols. `ambient_basis` names the row basis.
AbelianGroupPresentation cokernel(const IntMatrix& a, std::vector<std::string> ambient_basis);

/// ker A as a free subgroup of Z^cols. `ambient_basis` names the column basis.
AbelianGroupPresentation kernel(const IntMatrix& a, std::vector<std::string> ambient_basis);

std::optional<mpz_class> element_order(const AbelianGroupPresentation& gp, const IntVector& x);

/// Prime-power factors of each torsion order, e.g. {12} -> {4, 3}.
std::vector<std::pair<mpz_class, unsigned>> primary_decomposition(const IntVector& torsion);

std::string format_vector(const IntVector& x, const std::vector<std::string>& basis);

}  // namespace khom
