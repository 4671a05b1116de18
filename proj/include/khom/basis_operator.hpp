#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "khom/basis.hpp"

namespace khom {

/// Finite region outside which an operator is certified defect-free. Every
/// defect has all |coordinates| <= radius; a guard shell of the given width
/// beyond the radius is scanned point by point as a tripwire.
struct DefectCertificate {
  Coord radius = 0;
  Coord guard_width = 8;
};

/// Operator sending basis vectors to basis vectors: a finite union of
/// `CellMap` pieces with disjoint domains and disjoint images. Projections
/// are the special case where every piece is the identity on its cell.
class BasisOperator {
 public:
  enum class Kind { PartialInjection, Projection };

  BasisOperator() = default;  // zero operator
  static BasisOperator injection(std::vector<CellMap> pieces, DefectCertificate cert = {});
  static BasisOperator projection(std::vector<Cell> cells, DefectCertificate cert = {});

  Kind kind() const { return kind_; }
  const std::vector<CellMap>& pieces() const { return pieces_; }
  const std::vector<Cell>& image_cells() const { return images_; }
  const DefectCertificate& certificate() const { return cert_; }
  void set_certificate(DefectCertificate cert) { cert_ = cert; }

  std::optional<BasisPoint> apply(const BasisPoint& b) const;
  std::optional<BasisPoint> apply_inverse(const BasisPoint& y) const;
  bool in_domain(const BasisPoint& b) const;
  bool in_image(const BasisPoint& y) const;

  /// (*this) o first
  BasisOperator after(const BasisOperator& first) const;
  /// T T*: projection onto the image.
  BasisOperator range_projection() const;
  /// T* T: projection onto the domain.
  BasisOperator source_projection() const;
  /// Restriction to the basis points satisfying `sum` (an eigenspace cut).
  BasisOperator restricted(SumCongruence sum) const;
  /// Same operator on a direct sum, tags shifted by `offset`.
  BasisOperator shifted_tags(int offset) const;

 private:
  Kind kind_ = Kind::Projection;
  std::vector<CellMap> pieces_;
  std::vector<Cell> images_;
  DefectCertificate cert_;
};

/// Self-adjoint involution F: the sign of one coordinate (+1 for x >= 0),
/// except on finitely many transposed pairs where F swaps the two points.
struct SignOperator {
  std::size_t coord = 0;
  std::vector<std::pair<BasisPoint, BasisPoint>> swaps;

  int diagonal_sign(const BasisPoint& b) const { return b.coords.at(coord) >= 0 ? 1 : -1; }
  bool is_diagonal() const { return swaps.empty(); }
  /// F b, as a basis point with coefficient +1 or -1.
  std::pair<BasisPoint, int> apply(const BasisPoint& b) const;
};

/// Domain points b with sign(T b) != sign(b), split by which way the sign
/// changes. `exits` are points leaving {x_sign >= 0}; `entries` enter it.
struct SignDefects {
  std::vector<BasisPoint> exits;
  std::vector<BasisPoint> entries;
};

/// Exact defect sets by interval arithmetic on the cells of T. Throws
/// CertificateViolation if either set is infinite.
SignDefects sign_defects(const BasisOperator& t, std::size_t sign_coord);

/// Pointwise form of the same predicate.
bool is_sign_defect(const BasisOperator& t, const SignOperator& f, const BasisPoint& b);

struct CommutatorReport {
  std::int64_t rank = 0;
  /// For projections Q: rank of (1 - Q) F Q. Commutators of a projection
  /// with a self-adjoint involution have rank exactly twice this.
  std::optional<std::int64_t> off_diagonal_rank;
  std::vector<BasisPoint> witness;
};

/// Exact rank of F T - T F. Verifies T's certificate: all diagonal-sign
/// defects within the radius and none in the guard shell.
CommutatorReport commutator_rank(const SignOperator& f, const BasisOperator& t,
                                 const BasisSpace& space);

/// Index of P T P from T*T P H to T T* P H, where P = (1 + F)/2 and F is
/// diagonal: #{kernel} - #{cokernel}, both counted exactly.
std::int64_t compressed_index(const SignOperator& f, const BasisOperator& t,
                              const BasisSpace& space);

/// Exact rank of T1 - T0 for basis operators that agree outside the radius
/// box (checked on the guard shell).
std::int64_t perturbation_rank(const BasisOperator& t0, const BasisOperator& t1,
                               const BasisSpace& space, const DefectCertificate& cert);

/// Index of Q1 Q0 : Q0 H -> Q1 H for diagonal projections whose symmetric
/// difference lies in the radius box: |Q0 \ Q1| - |Q1 \ Q0|.
std::int64_t relative_index(const BasisOperator& q0, const BasisOperator& q1,
                            const BasisSpace& space, const DefectCertificate& cert);

}  // namespace khom
