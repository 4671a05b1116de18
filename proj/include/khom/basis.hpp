#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khom {

using Coord = std::int64_t;

/// Element of a countable orthonormal basis: a tag (vertex label, or 0 for
/// untagged spaces) and an integer coordinate tuple.
struct BasisPoint {
  int tag = 0;
  std::vector<Coord> coords;

  auto operator<=>(const BasisPoint&) const = default;
  std::string to_string() const;
};

/// Raised when an operator's defect structure contradicts its certificate:
/// an infinite defect set, a defect outside the certified radius, or a
/// defect found while scanning the guard shell.
class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integers x with lo <= x <= hi (either bound may be absent) and
/// x = residue (mod modulus), 0 <= residue < modulus.
struct CoordSet {
  std::optional<Coord> lo;
  std::optional<Coord> hi;
  Coord modulus = 1;
  Coord residue = 0;

  static CoordSet all() { return {}; }
  static CoordSet at_least(Coord lo) { return {lo, std::nullopt, 1, 0}; }
  static CoordSet at_most(Coord hi) { return {std::nullopt, hi, 1, 0}; }
  static CoordSet exactly(Coord x) { return {x, x, 1, 0}; }
  static CoordSet between(Coord lo, Coord hi) { return {lo, hi, 1, 0}; }

  bool contains(Coord x) const;
  bool bounded() const { return lo.has_value() && hi.has_value(); }
  bool empty() const;
  friend bool operator==(const CoordSet&, const CoordSet&) = default;
};

/// Constraint sum_i x_i = residue (mod modulus) on all coordinates.
struct SumCongruence {
  Coord modulus = 1;
  Coord residue = 0;
  friend bool operator==(const SumCongruence&, const SumCongruence&) = default;
};

/// Product set {tag} x prod_i coords[i], optionally cut by a sum congruence.
struct Cell {
  int tag = 0;
  std::vector<CoordSet> coords;
  std::optional<SumCongruence> sum;

  bool contains(const BasisPoint& b) const;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// x |-> offset + scale * x with scale >= 1.
struct Affine {
  Coord offset = 0;
  Coord scale = 1;
  Coord apply(Coord x) const { return offset + scale * x; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// One piece of a partial injection: a domain cell mapped coordinatewise.
struct CellMap {
  Cell domain;
  int target_tag = 0;
  std::vector<Affine> maps;

  BasisPoint apply(const BasisPoint& b) const;
  /// Inverse on the image; nullopt when `y` is not an image point.
  std::optional<BasisPoint> invert(const BasisPoint& y) const;
  bool is_identity() const;
};

std::optional<CoordSet> intersect(const CoordSet& a, const CoordSet& b);
/// {x : f(x) in s}
std::optional<CoordSet> preimage(const CoordSet& s, const Affine& f);
/// {f(x) : x in s}
CoordSet image(const CoordSet& s, const Affine& f);

std::optional<SumCongruence> intersect(const SumCongruence& a, const SumCongruence& b);

std::optional<Cell> intersect(const Cell& a, const Cell& b);
/// Points of m.domain that m sends into `target`.
std::optional<Cell> preimage(const Cell& target, const CellMap& m);
Cell image(const CellMap& m);

/// Composite piece `second` after `first`, or nullopt when it is empty.
std::optional<CellMap> compose(const CellMap& second, const CellMap& first);

struct PointCount {
  bool infinite = false;
  std::int64_t value = 0;
};

/// Exact cardinality of a cell.
PointCount count_points(const Cell& c);

/// Every point of a bounded cell, in lexicographic order. Throws
/// std::invalid_argument if the cell is unbounded.
std::vector<BasisPoint> enumerate_points(const Cell& c);

/// Coordinates shape of a module's Hilbert space: one copy of the coordinate
/// lattice per tag. `nonnegative[i]` marks N-valued coordinates.
struct BasisSpace {
  std::vector<std::string> tags;
  std::vector<bool> nonnegative;
  std::size_t sign_coord = 0;

  std::size_t dimension() const { return nonnegative.size(); }
  bool contains(const BasisPoint& b) const;
};

/// Finite rectangular set of basis points: every tag times a product of
/// closed coordinate ranges. Points are addressable by a flat index so that
/// scans parallelise trivially.
class Window {
 public:
  Window(std::size_t tag_count, std::vector<std::pair<Coord, Coord>> ranges);

  std::size_t size() const { return size_; }
  BasisPoint at(std::size_t flat) const;
  const std::vector<std::pair<Coord, Coord>>& ranges() const { return ranges_; }
  bool contains(const BasisPoint& b) const;

 private:
  std::size_t tag_count_;
  std::vector<std::pair<Coord, Coord>> ranges_;
  std::size_t size_ = 0;
};

/// All points of `space` with every |coordinate| <= radius.
Window box_window(const BasisSpace& space, Coord radius);

/// Points with radius < |x_sign| <= radius + width and every other
/// coordinate inside the radius box. One or two windows.
std::vector<Window> sign_shell(const BasisSpace& space, Coord radius, Coord width);

/// Floor and ceiling division for possibly negative numerators, d > 0.
Coord floor_div(Coord n, Coord d);
Coord ceil_div(Coord n, Coord d);
Coord mod_floor(Coord n, Coord d);

}  // namespace khom
