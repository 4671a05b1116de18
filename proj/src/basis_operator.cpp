#include "khom/basis_operator.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "khom/int_matrix.hpp"
#include "khom/kernels.hpp"
#include "khom/smith.hpp"

namespace khom {

BasisOperator BasisOperator::injection(std::vector<CellMap> pieces, DefectCertificate cert) {
  BasisOperator t;
  t.kind_ = Kind::PartialInjection;
  t.pieces_ = std::move(pieces);
  for (const auto& p : t.pieces_) t.images_.push_back(image(p));
  t.cert_ = cert;
  return t;
}

BasisOperator BasisOperator::projection(std::vector<Cell> cells, DefectCertificate cert) {
  BasisOperator t;
  t.kind_ = Kind::Projection;
  for (auto& c : cells) {
    std::vector<Affine> id(c.coords.size());
    const int tag = c.tag;
    t.images_.push_back(c);
    t.pieces_.push_back(CellMap{std::move(c), tag, std::move(id)});
  }
  t.cert_ = cert;
  return t;
}

std::optional<BasisPoint> BasisOperator::apply(const BasisPoint& b) const {
  for (const auto& p : pieces_)
    if (p.domain.contains(b)) return p.apply(b);
  return std::nullopt;
}

std::optional<BasisPoint> BasisOperator::apply_inverse(const BasisPoint& y) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (images_[i].contains(y)) return pieces_[i].invert(y);
  return std::nullopt;
}

bool BasisOperator::in_domain(const BasisPoint& b) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const CellMap& p) { return p.domain.contains(b); });
}

bool BasisOperator::in_image(const BasisPoint& y) const {
  return std::any_of(images_.begin(), images_.end(), [&](const Cell& c) { return c.contains(y); });
}

BasisOperator BasisOperator::after(const BasisOperator& first) const {
  std::vector<CellMap> pieces;
  for (const auto& p1 : first.pieces_)
    for (const auto& p2 : pieces_)
      if (auto c = compose(p2, p1)) pieces.push_back(std::move(*c));
  DefectCertificate cert{std::max(cert_.radius, first.cert_.radius),
                         std::max(cert_.guard_width, first.cert_.guard_width)};
  if (kind_ == Kind::Projection && first.kind_ == Kind::Projection) {
    std::vector<Cell> cells;
    for (auto& p : pieces) cells.push_back(std::move(p.domain));
    return projection(std::move(cells), cert);
  }
  return injection(std::move(pieces), cert);
}

BasisOperator BasisOperator::range_projection() const { return projection(images_, cert_); }

BasisOperator BasisOperator::source_projection() const {
  std::vector<Cell> cells;
  for (const auto& p : pieces_) cells.push_back(p.domain);
  return projection(std::move(cells), cert_);
}

BasisOperator BasisOperator::restricted(SumCongruence sum) const {
  std::vector<CellMap> pieces;
  for (const auto& p : pieces_) {
    Cell cut{p.domain.tag, p.domain.coords, sum};
    if (auto dom = intersect(p.domain, cut)) pieces.push_back(CellMap{*dom, p.target_tag, p.maps});
  }
  if (kind_ == Kind::Projection) {
    std::vector<Cell> cells;
    for (auto& p : pieces) cells.push_back(std::move(p.domain));
    return projection(std::move(cells), cert_);
  }
  return injection(std::move(pieces), cert_);
}

BasisOperator BasisOperator::shifted_tags(int offset) const {
  std::vector<CellMap> pieces = pieces_;
  for (auto& p : pieces) {
    p.domain.tag += offset;
    p.target_tag += offset;
  }
  if (kind_ == Kind::Projection) {
    std::vector<Cell> cells;
    for (auto& p : pieces) cells.push_back(std::move(p.domain));
    return projection(std::move(cells), cert_);
  }
  return injection(std::move(pieces), cert_);
}

std::pair<BasisPoint, int> SignOperator::apply(const BasisPoint& b) const {
  for (const auto& [x, y] : swaps) {
    if (b == x) return {y, 1};
    if (b == y) return {x, 1};
  }
  return {b, diagonal_sign(b)};
}

SignDefects sign_defects(const BasisOperator& t, std::size_t s) {
  SignDefects out;
  auto collect = [&](const Cell& base, CoordSet band, std::vector<BasisPoint>& sink) {
    Cell cell = base;
    auto cut = intersect(cell.coords.at(s), band);
    if (!cut) return;
    cell.coords[s] = *cut;
    const auto n = count_points(cell);
    if (n.infinite)
      throw CertificateViolation("infinite sign-defect set on cell with tag " +
                                 std::to_string(cell.tag));
    if (n.value == 0) return;
    auto pts = enumerate_points(cell);
    sink.insert(sink.end(), pts.begin(), pts.end());
  };
  for (const auto& p : t.pieces()) {
    const Affine& f = p.maps.at(s);
    // x >= 0 and offset + scale*x < 0
    collect(p.domain, CoordSet::between(0, floor_div(-1 - f.offset, f.scale)), out.exits);
    // x < 0 and offset + scale*x >= 0
    collect(p.domain, CoordSet::between(ceil_div(-f.offset, f.scale), -1), out.entries);
  }
  std::sort(out.exits.begin(), out.exits.end());
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

bool is_sign_defect(const BasisOperator& t, const SignOperator& f, const BasisPoint& b) {
  auto y = t.apply(b);
  return y && f.diagonal_sign(*y) != f.diagonal_sign(b);
}

namespace {

void certify(const BasisOperator& t, const SignOperator& f, const BasisSpace& space,
             const SignDefects& d) {
  const auto& cert = t.certificate();
  auto inside = [&](const BasisPoint& b) {
    return std::all_of(b.coords.begin(), b.coords.end(),
                       [&](Coord x) { return x >= -cert.radius && x <= cert.radius; });
  };
  for (const auto* set : {&d.exits, &d.entries})
    for (const auto& b : *set)
      if (!inside(b))
        throw CertificateViolation("sign defect " + b.to_string() + " outside certified radius " +
                                   std::to_string(cert.radius));
  auto shell = kernels::shell_defects(t, f, space, cert);
  if (!shell.empty())
    throw CertificateViolation("guard shell defect at " + shell.front().to_string());
}

}  // namespace

CommutatorReport commutator_rank(const SignOperator& f, const BasisOperator& t,
                                 const BasisSpace& space) {
  const auto d = sign_defects(t, f.coord);
  certify(t, f, space, d);

  std::vector<BasisPoint> generic = d.exits;
  generic.insert(generic.end(), d.entries.begin(), d.entries.end());
  std::sort(generic.begin(), generic.end());

  CommutatorReport report;
  if (t.kind() == BasisOperator::Kind::Projection) {
    std::int64_t leaks = 0;
    for (const auto& [x, y] : f.swaps)
      if (t.in_domain(x) != t.in_domain(y)) ++leaks;
    report.off_diagonal_rank = leaks;
  }

  if (f.is_diagonal()) {
    report.rank = static_cast<std::int64_t>(generic.size());
    report.witness = std::move(generic);
    return report;
  }

  // Columns F T b - T F b differ from the diagonal formula only near swapped
  // points; those are handled explicitly.
  std::set<BasisPoint> exceptional;
  for (const auto& [x, y] : f.swaps)
    for (const auto* p : {&x, &y}) {
      exceptional.insert(*p);
      if (auto pre = t.apply_inverse(*p)) exceptional.insert(*pre);
    }

  std::set<BasisPoint> generic_rows;
  std::int64_t generic_rank = 0;
  for (const auto& b : generic) {
    if (exceptional.contains(b)) continue;
    ++generic_rank;
    generic_rows.insert(*t.apply(b));
    report.witness.push_back(b);
  }

  std::vector<std::map<BasisPoint, long>> columns;
  std::set<BasisPoint> rows;
  for (const auto& b : exceptional) {
    std::map<BasisPoint, long> col;
    if (auto y = t.apply(b)) {
      auto [fy, c] = f.apply(*y);
      col[fy] += c;
    }
    auto [fb, c2] = f.apply(b);
    if (auto z = t.apply(fb)) col[*z] -= c2;
    std::erase_if(col, [&](const auto& kv) { return kv.second == 0 || generic_rows.contains(kv.first); });
    if (col.empty()) continue;
    for (const auto& kv : col) rows.insert(kv.first);
    columns.push_back(std::move(col));
    report.witness.push_back(b);
  }
  std::int64_t exceptional_rank = 0;
  if (!columns.empty()) {
    std::vector<BasisPoint> row_list(rows.begin(), rows.end());
    IntMatrix m(row_list.size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const auto& [pt, v] : columns[j]) {
        auto it = std::lower_bound(row_list.begin(), row_list.end(), pt);
        m(static_cast<std::size_t>(it - row_list.begin()), j) = v;
      }
    exceptional_rank = static_cast<std::int64_t>(rank(m));
  }
  report.rank = generic_rank + exceptional_rank;
  return report;
}

std::int64_t compressed_index(const SignOperator& f, const BasisOperator& t,
                              const BasisSpace& space) {
  if (!f.is_diagonal())
    throw std::invalid_argument("compressed_index: sign operator is not diagonal");
  const auto d = sign_defects(t, f.coord);
  certify(t, f, space, d);
  return static_cast<std::int64_t>(d.exits.size()) - static_cast<std::int64_t>(d.entries.size());
}

namespace {

bool inside_box(const BasisPoint& b, const BasisSpace& space, Coord radius) {
  for (std::size_t i = 0; i < b.coords.size(); ++i) {
    const Coord lo = space.nonnegative[i] ? 0 : -radius;
    if (b.coords[i] < lo || b.coords[i] > radius) return false;
  }
  return true;
}

}  // namespace

std::int64_t perturbation_rank(const BasisOperator& t0, const BasisOperator& t1,
                               const BasisSpace& space, const DefectCertificate& cert) {
  const Window outer = box_window(space, cert.radius + cert.guard_width);
  std::vector<std::map<BasisPoint, long>> columns;
  std::set<BasisPoint> rows;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto b = outer.at(i);
    const auto y0 = t0.apply(b);
    const auto y1 = t1.apply(b);
    if (y0 == y1) continue;
    if (!inside_box(b, space, cert.radius))
      throw CertificateViolation("perturbation outside certified radius at " + b.to_string());
    std::map<BasisPoint, long> col;
    if (y1) col[*y1] += 1;
    if (y0) col[*y0] -= 1;
    for (const auto& kv : col) rows.insert(kv.first);
    columns.push_back(std::move(col));
  }
  if (columns.empty()) return 0;
  std::vector<BasisPoint> row_list(rows.begin(), rows.end());
  IntMatrix m(row_list.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [pt, v] : columns[j]) {
      auto it = std::lower_bound(row_list.begin(), row_list.end(), pt);
      m(static_cast<std::size_t>(it - row_list.begin()), j) = v;
    }
  return static_cast<std::int64_t>(rank(m));
}

std::int64_t relative_index(const BasisOperator& q0, const BasisOperator& q1,
                            const BasisSpace& space, const DefectCertificate& cert) {
  auto boxed_count = [&](const BasisOperator& q) {
    std::int64_t total = 0;
    for (const auto& p : q.pieces()) {
      Cell box{p.domain.tag, {}, std::nullopt};
      for (bool nonneg : space.nonnegative)
        box.coords.push_back(CoordSet::between(nonneg ? 0 : -cert.radius, cert.radius));
      if (auto c = intersect(p.domain, box)) total += count_points(*c).value;
    }
    return total;
  };
  for (const auto& w : sign_shell(space, cert.radius, cert.guard_width))
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto b = w.at(i);
      if (q0.in_domain(b) != q1.in_domain(b))
        throw CertificateViolation("projections differ outside certified radius at " + b.to_string());
    }
  return boxed_count(q0) - boxed_count(q1);
}

}  // namespace khom
