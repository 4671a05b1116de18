#include "khom/basis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace khom {

namespace {

__extension__ using Wide = __int128;

Coord checked(Wide x) {
  if (x > std::numeric_limits<Coord>::max() || x < std::numeric_limits<Coord>::min())
    throw std::overflow_error("basis coordinate arithmetic overflow");
  return static_cast<Coord>(x);
}

// Inverse of a modulo m, gcd(a, m) == 1, m >= 1.
Coord mod_inverse(Coord a, Coord m) {
  if (m == 1) return 0;
  Coord old_r = mod_floor(a, m), r = m;
  Coord old_s = 1, s = 0;
  while (r != 0) {
    Coord q = old_r / r;
    Coord t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return mod_floor(old_s, m);
}

// x = r1 (mod m1) and x = r2 (mod m2) combined, or nullopt if incompatible.
std::optional<std::pair<Coord, Coord>> combine_residues(Coord m1, Coord r1, Coord m2, Coord r2) {
  const Coord g = std::gcd(m1, m2);
  const Coord diff = r2 - r1;
  if (diff % g != 0) return std::nullopt;
  const Coord m2g = m2 / g;
  const Coord l = checked(static_cast<Wide>(m1 / g) * m2);
  const Coord k = checked(static_cast<Wide>(mod_floor(diff / g, m2g)) *
                          mod_inverse(mod_floor(m1 / g, m2g), m2g) % m2g);
  const Coord r = mod_floor(checked(r1 + static_cast<Wide>(m1) * k), l);
  return std::make_pair(l, r);
}

// Elements of a nonempty bounded set: first element and how many there are.
std::pair<Coord, std::int64_t> arithmetic_run(const CoordSet& s) {
  const Coord first = *s.lo + mod_floor(s.residue - *s.lo, s.modulus);
  if (first > *s.hi) return {first, 0};
  return {first, (*s.hi - first) / s.modulus + 1};
}

struct Tally {
  bool infinite = false;
  Wide value = 0;
  bool nonzero() const { return infinite || value != 0; }
};

}  // namespace

Coord floor_div(Coord n, Coord d) {
  Coord q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

Coord ceil_div(Coord n, Coord d) { return -floor_div(-n, d); }

Coord mod_floor(Coord n, Coord d) { return n - d * floor_div(n, d); }

std::string BasisPoint::to_string() const {
  std::ostringstream os;
  os << "#" << tag << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ")";
  return os.str();
}

bool CoordSet::contains(Coord x) const {
  if (lo && x < *lo) return false;
  if (hi && x > *hi) return false;
  return mod_floor(x - residue, modulus) == 0;
}

bool CoordSet::empty() const {
  if (lo && hi) {
    if (*lo > *hi) return true;
    return arithmetic_run(*this).second == 0;
  }
  return false;
}

bool Cell::contains(const BasisPoint& b) const {
  if (b.tag != tag || b.coords.size() != coords.size()) return false;
  Coord total = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].contains(b.coords[i])) return false;
    total += b.coords[i];
  }
  if (sum && mod_floor(total - sum->residue, sum->modulus) != 0) return false;
  return true;
}

BasisPoint CellMap::apply(const BasisPoint& b) const {
  BasisPoint out{target_tag, std::vector<Coord>(b.coords.size())};
  for (std::size_t i = 0; i < b.coords.size(); ++i) out.coords[i] = maps[i].apply(b.coords[i]);
  return out;
}

std::optional<BasisPoint> CellMap::invert(const BasisPoint& y) const {
  if (y.tag != target_tag || y.coords.size() != maps.size()) return std::nullopt;
  BasisPoint x{domain.tag, std::vector<Coord>(y.coords.size())};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const Coord shifted = y.coords[i] - maps[i].offset;
    if (mod_floor(shifted, maps[i].scale) != 0) return std::nullopt;
    x.coords[i] = shifted / maps[i].scale;
  }
  if (!domain.contains(x)) return std::nullopt;
  return x;
}

bool CellMap::is_identity() const {
  if (target_tag != domain.tag) return false;
  return std::all_of(maps.begin(), maps.end(),
                     [](const Affine& f) { return f.offset == 0 && f.scale == 1; });
}

std::optional<CoordSet> intersect(const CoordSet& a, const CoordSet& b) {
  CoordSet out;
  out.lo = a.lo && b.lo ? std::max(*a.lo, *b.lo) : (a.lo ? a.lo : b.lo);
  out.hi = a.hi && b.hi ? std::min(*a.hi, *b.hi) : (a.hi ? a.hi : b.hi);
  auto res = combine_residues(a.modulus, a.residue, b.modulus, b.residue);
  if (!res) return std::nullopt;
  out.modulus = res->first;
  out.residue = res->second;
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<CoordSet> preimage(const CoordSet& s, const Affine& f) {
  CoordSet out;
  if (s.lo) out.lo = ceil_div(*s.lo - f.offset, f.scale);
  if (s.hi) out.hi = floor_div(*s.hi - f.offset, f.scale);
  // scale * x = residue - offset (mod modulus)
  const Coord rhs = mod_floor(s.residue - f.offset, s.modulus);
  const Coord g = std::gcd(f.scale, s.modulus);
  if (rhs % g != 0) return std::nullopt;
  const Coord m = s.modulus / g;
  out.modulus = m;
  out.residue = checked(static_cast<Wide>(rhs / g) * mod_inverse(f.scale / g, m) % m);
  if (m == 1) out.residue = 0;
  if (out.empty()) return std::nullopt;
  return out;
}

CoordSet image(const CoordSet& s, const Affine& f) {
  CoordSet out;
  if (s.lo) out.lo = checked(f.offset + static_cast<Wide>(f.scale) * *s.lo);
  if (s.hi) out.hi = checked(f.offset + static_cast<Wide>(f.scale) * *s.hi);
  out.modulus = checked(static_cast<Wide>(f.scale) * s.modulus);
  out.residue = mod_floor(checked(f.offset + static_cast<Wide>(f.scale) * s.residue), out.modulus);
  return out;
}

std::optional<SumCongruence> intersect(const SumCongruence& a, const SumCongruence& b) {
  auto res = combine_residues(a.modulus, a.residue, b.modulus, b.residue);
  if (!res) return std::nullopt;
  return SumCongruence{res->first, res->second};
}

namespace {

std::optional<std::optional<SumCongruence>> merge_sums(const std::optional<SumCongruence>& a,
                                                       const std::optional<SumCongruence>& b) {
  if (!a) return b;
  if (!b) return a;
  auto s = intersect(*a, *b);
  if (!s) return std::nullopt;
  return std::optional<SumCongruence>(*s);
}

bool all_translations(const std::vector<Affine>& maps) {
  return std::all_of(maps.begin(), maps.end(), [](const Affine& f) { return f.scale == 1; });
}

Coord total_offset(const std::vector<Affine>& maps) {
  Coord t = 0;
  for (const auto& f : maps) t += f.offset;
  return t;
}

}  // namespace

std::optional<Cell> intersect(const Cell& a, const Cell& b) {
  if (a.tag != b.tag || a.coords.size() != b.coords.size()) return std::nullopt;
  Cell out{a.tag, {}, std::nullopt};
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    auto s = intersect(a.coords[i], b.coords[i]);
    if (!s) return std::nullopt;
    out.coords.push_back(*s);
  }
  auto sum = merge_sums(a.sum, b.sum);
  if (!sum) return std::nullopt;
  out.sum = *sum;
  return out;
}

std::optional<Cell> preimage(const Cell& target, const CellMap& m) {
  if (target.tag != m.target_tag || target.coords.size() != m.maps.size()) return std::nullopt;
  Cell pulled{m.domain.tag, {}, std::nullopt};
  for (std::size_t i = 0; i < m.maps.size(); ++i) {
    auto s = preimage(target.coords[i], m.maps[i]);
    if (!s) return std::nullopt;
    pulled.coords.push_back(*s);
  }
  if (target.sum) {
    if (!all_translations(m.maps))
      throw std::logic_error("sum congruence pulled back through a non-translation");
    pulled.sum = SumCongruence{target.sum->modulus,
                               mod_floor(target.sum->residue - total_offset(m.maps),
                                         target.sum->modulus)};
  }
  return intersect(pulled, m.domain);
}

Cell image(const CellMap& m) {
  Cell out{m.target_tag, {}, std::nullopt};
  for (std::size_t i = 0; i < m.maps.size(); ++i) out.coords.push_back(image(m.domain.coords[i], m.maps[i]));
  if (m.domain.sum) {
    if (!all_translations(m.maps))
      throw std::logic_error("sum congruence pushed through a non-translation");
    out.sum = SumCongruence{m.domain.sum->modulus,
                            mod_floor(m.domain.sum->residue + total_offset(m.maps),
                                      m.domain.sum->modulus)};
  }
  return out;
}

std::optional<CellMap> compose(const CellMap& second, const CellMap& first) {
  auto dom = preimage(second.domain, first);
  if (!dom) return std::nullopt;
  CellMap out{*dom, second.target_tag, {}};
  for (std::size_t i = 0; i < first.maps.size(); ++i) {
    const auto& f = first.maps[i];
    const auto& s = second.maps[i];
    out.maps.push_back(Affine{checked(s.offset + static_cast<Wide>(s.scale) * f.offset),
                              checked(static_cast<Wide>(s.scale) * f.scale)});
  }
  return out;
}

PointCount count_points(const Cell& c) {
  for (const auto& s : c.coords)
    if (s.empty()) return {false, 0};

  if (!c.sum) {
    Wide total = 1;
    bool infinite = false;
    for (const auto& s : c.coords) {
      if (!s.bounded()) {
        infinite = true;
        continue;
      }
      total *= arithmetic_run(s).second;
      checked(total);
    }
    if (infinite) return {true, 0};
    return {false, static_cast<std::int64_t>(total)};
  }

  // Distribution of the coordinate sum modulo q, built one coordinate at a time.
  const Coord q = c.sum->modulus;
  std::vector<Tally> acc(static_cast<std::size_t>(q));
  acc[0].value = 1;
  for (const auto& s : c.coords) {
    std::vector<Tally> hist(static_cast<std::size_t>(q));
    const Coord period = q / std::gcd(s.modulus, q);
    if (s.bounded()) {
      auto [first, n] = arithmetic_run(s);
      for (Coord t = 0; t < std::min<Coord>(period, n); ++t) {
        auto& h = hist[static_cast<std::size_t>(mod_floor(first + s.modulus * t, q))];
        h.value += (n - 1 - t) / period + 1;
      }
    } else {
      for (Coord t = 0; t < period; ++t)
        hist[static_cast<std::size_t>(mod_floor(s.residue + s.modulus * t, q))].infinite = true;
    }
    std::vector<Tally> next(static_cast<std::size_t>(q));
    for (Coord a = 0; a < q; ++a) {
      if (!acc[a].nonzero()) continue;
      for (Coord b = 0; b < q; ++b) {
        if (!hist[b].nonzero()) continue;
        auto& out = next[static_cast<std::size_t>((a + b) % q)];
        if (acc[a].infinite || hist[b].infinite) {
          out.infinite = true;
        } else {
          out.value += acc[a].value * hist[b].value;
          checked(out.value);
        }
      }
    }
    acc = std::move(next);
  }
  const auto& r = acc[static_cast<std::size_t>(c.sum->residue)];
  if (r.infinite) return {true, 0};
  return {false, static_cast<std::int64_t>(r.value)};
}

std::vector<BasisPoint> enumerate_points(const Cell& c) {
  for (const auto& s : c.coords) {
    if (s.empty()) return {};
    if (!s.bounded()) throw std::invalid_argument("enumerate_points: unbounded cell");
  }
  std::vector<BasisPoint> out;
  BasisPoint b{c.tag, std::vector<Coord>(c.coords.size())};
  std::vector<std::pair<Coord, std::int64_t>> runs;
  for (const auto& s : c.coords) runs.push_back(arithmetic_run(s));
  std::vector<std::int64_t> idx(c.coords.size(), 0);
  const std::size_t dim = c.coords.size();
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) b.coords[i] = runs[i].first + c.coords[i].modulus * idx[i];
    if (c.contains(b)) out.push_back(b);
    std::size_t k = dim;
    while (k > 0) {
      --k;
      if (++idx[k] < runs[k].second) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (dim == 0) return out;
  }
}

bool BasisSpace::contains(const BasisPoint& b) const {
  if (b.tag < 0 || static_cast<std::size_t>(b.tag) >= tags.size()) return false;
  if (b.coords.size() != nonnegative.size()) return false;
  for (std::size_t i = 0; i < nonnegative.size(); ++i)
    if (nonnegative[i] && b.coords[i] < 0) return false;
  return true;
}

Window::Window(std::size_t tag_count, std::vector<std::pair<Coord, Coord>> ranges)
    : tag_count_(tag_count), ranges_(std::move(ranges)) {
  size_ = tag_count_;
  for (const auto& [lo, hi] : ranges_) size_ *= hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
}

BasisPoint Window::at(std::size_t flat) const {
  BasisPoint b{0, std::vector<Coord>(ranges_.size())};
  for (std::size_t k = ranges_.size(); k-- > 0;) {
    const auto width = static_cast<std::size_t>(ranges_[k].second - ranges_[k].first + 1);
    b.coords[k] = ranges_[k].first + static_cast<Coord>(flat % width);
    flat /= width;
  }
  b.tag = static_cast<int>(flat);
  return b;
}

bool Window::contains(const BasisPoint& b) const {
  if (b.tag < 0 || static_cast<std::size_t>(b.tag) >= tag_count_) return false;
  for (std::size_t i = 0; i < ranges_.size(); ++i)
    if (b.coords[i] < ranges_[i].first || b.coords[i] > ranges_[i].second) return false;
  return true;
}

Window box_window(const BasisSpace& space, Coord radius) {
  std::vector<std::pair<Coord, Coord>> ranges;
  for (bool nonneg : space.nonnegative) ranges.emplace_back(nonneg ? 0 : -radius, radius);
  return Window(space.tags.size(), std::move(ranges));
}

std::vector<Window> sign_shell(const BasisSpace& space, Coord radius, Coord width) {
  std::vector<Window> out;
  if (space.dimension() == 0 || width <= 0) return out;
  std::vector<std::pair<Coord, Coord>> ranges;
  for (bool nonneg : space.nonnegative) ranges.emplace_back(nonneg ? 0 : -radius, radius);
  const auto s = space.sign_coord;
  ranges[s] = {radius + 1, radius + width};
  out.emplace_back(space.tags.size(), ranges);
  if (!space.nonnegative[s]) {
    ranges[s] = {-radius - width, -radius - 1};
    out.emplace_back(space.tags.size(), ranges);
  }
  return out;
}

}  // namespace khom
