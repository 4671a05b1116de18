#include "khom/fredholm.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "khom/complexes.hpp"

namespace khom {

namespace {

std::int64_t max_abs(const std::vector<std::int64_t>& xs) {
  std::int64_t m = 0;
  for (auto x : xs) m = std::max(m, x < 0 ? -x : x);
  return m;
}

Coord max_out_degree(const DirectedGraph& g) {
  std::size_t d = 1;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.out_degree(v));
  return static_cast<Coord>(d);
}

BasisSpace vertex_line_space(const DirectedGraph& g) {
  const auto names = g.vertex_names();
  return BasisSpace{{names.begin(), names.end()}, {false}, 0};
}

Cell half_line(std::size_t v, Coord from) {
  return Cell{static_cast<int>(v), {CoordSet::at_least(from)}, std::nullopt};
}

Cell full_line(std::size_t v) {
  return Cell{static_cast<int>(v), {CoordSet::all()}, std::nullopt};
}

CellMap line_map(Cell domain, std::size_t target, Coord offset, Coord scale) {
  const int tag = static_cast<int>(target);
  return CellMap{std::move(domain), tag, {Affine{offset, scale}}};
}

void check_eta_size(const DirectedGraph& g, const VertexFunction& eta) {
  if (eta.values.size() != g.vertex_count())
    throw std::invalid_argument("vertex function has " + std::to_string(eta.values.size()) +
                                " values for " + std::to_string(g.vertex_count()) + " vertices");
}

// Sum of two operators acting on disjoint tag ranges.
BasisOperator disjoint_sum(const BasisOperator& a, const BasisOperator& b, int offset) {
  const auto shifted = b.shifted_tags(offset);
  DefectCertificate cert{std::max(a.certificate().radius, b.certificate().radius),
                         std::max(a.certificate().guard_width, b.certificate().guard_width)};
  if (a.kind() == BasisOperator::Kind::Projection && b.kind() == BasisOperator::Kind::Projection) {
    std::vector<Cell> cells = a.image_cells();
    for (const auto& c : shifted.image_cells()) cells.push_back(c);
    return BasisOperator::projection(std::move(cells), cert);
  }
  std::vector<CellMap> pieces = a.pieces();
  for (const auto& p : shifted.pieces()) pieces.push_back(p);
  return BasisOperator::injection(std::move(pieces), cert);
}

Representation disjoint_sum(const Representation& a, const Representation& b, int offset) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size())
    throw std::invalid_argument("direct_sum: modules over different graphs");
  Representation out;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    out.vertices.push_back(disjoint_sum(a.vertices[i], b.vertices[i], offset));
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    out.edges.push_back(disjoint_sum(a.edges[i], b.edges[i], offset));
  return out;
}

BasisSpace sum_space(const BasisSpace& a, const BasisSpace& b) {
  if (a.nonnegative != b.nonnegative || a.sign_coord != b.sign_coord)
    throw std::invalid_argument("direct_sum: incompatible basis shapes");
  BasisSpace out = a;
  out.tags.insert(out.tags.end(), b.tags.begin(), b.tags.end());
  return out;
}

BasisPoint shifted(BasisPoint b, int offset) {
  b.tag += offset;
  return b;
}

}  // namespace

IntVector nonsink_values(const DirectedGraph& g, const VertexFunction& f) {
  check_eta_size(g, f);
  IntVector out;
  for (auto v : nonsinks(g)) out.emplace_back(static_cast<long>(f.values[v]));
  return out;
}

bool is_harmonic(const DirectedGraph& g, const VertexFunction& f) {
  check_eta_size(g, f);
  for (auto v : nonsinks(g)) {
    std::int64_t s = 0;
    for (auto e : g.out_edges(v)) s += f.values[g.edge(e).range];
    if (s != f.values[v]) return false;
  }
  return true;
}

GradedModule build_k0_module(const DirectedGraph& g, const VertexFunction& eta) {
  check_eta_size(g, eta);
  const auto& h = eta.values;
  for (auto v : nonsinks(g)) {
    std::int64_t s = 0;
    for (auto e : g.out_edges(v)) s += h[g.edge(e).range];
    if (s != h[v])
      throw HarmonicityError(g.vertex_name(v), "eta is not harmonic at " + g.vertex_name(v) + ": " +
                                                   std::to_string(h[v]) + " != " + std::to_string(s));
  }

  const DefectCertificate cert{(max_abs(h) + 2) * max_out_degree(g), 8};
  GradedModule m;
  m.space = vertex_line_space(g);
  m.symmetry = GradedModule::Symmetry::Flip;
  m.certificate = cert;

  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    m.even.vertices.push_back(BasisOperator::projection({half_line(v, 0)}, cert));
    m.odd.vertices.push_back(BasisOperator::projection({half_line(v, h[v])}, cert));
  }
  m.even.edges.resize(g.edge_count());
  m.odd.edges.resize(g.edge_count());

  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto out = g.out_edges(v);
    if (out.empty()) continue;
    const Coord d = static_cast<Coord>(out.size());

    std::vector<Coord> threshold(out.size());
    std::vector<std::pair<Coord, std::size_t>> spare_domain;  // (n, i)
    Coord top = h[v];
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto r = g.edge(out[i]).range;
      const Coord ci = static_cast<Coord>(i);
      threshold[i] = std::max({Coord{0}, h[r], ceil_div(h[v] - ci, d)});
      for (Coord n = h[r]; n < threshold[i]; ++n) spare_domain.emplace_back(n, i);
      top = std::max(top, ci + threshold[i] * d);
    }
    std::vector<Coord> spare_codomain;
    for (Coord y = h[v]; y < top; ++y) {
      const Coord i = mod_floor(y, d);
      if ((y - i) / d < threshold[static_cast<std::size_t>(i)]) spare_codomain.push_back(y);
    }
    if (spare_domain.size() != spare_codomain.size())
      throw std::logic_error("b_i construction at " + g.vertex_name(v) + ": " +
                             std::to_string(spare_domain.size()) + " leftover domain points vs " +
                             std::to_string(spare_codomain.size()) + " leftover codomain points");

    std::vector<std::vector<CellMap>> odd_pieces(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto r = g.edge(out[i]).range;
      const Coord ci = static_cast<Coord>(i);
      m.even.edges[out[i]] =
          BasisOperator::injection({line_map(half_line(r, 0), v, ci, d)}, cert);
      odd_pieces[i].push_back(line_map(half_line(r, threshold[i]), v, ci, d));
    }
    for (std::size_t k = 0; k < spare_domain.size(); ++k) {
      const auto [n, i] = spare_domain[k];
      const auto r = g.edge(out[i]).range;
      Cell point{static_cast<int>(r), {CoordSet::exactly(n)}, std::nullopt};
      odd_pieces[i].push_back(line_map(std::move(point), v, spare_codomain[k] - n, 1));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
      m.odd.edges[out[i]] = BasisOperator::injection(std::move(odd_pieces[i]), cert);
  }
  return m;
}

OddModule build_k1_module(const DirectedGraph& g, const VertexFunction& eta) {
  check_eta_size(g, eta);
  const auto& h = eta.values;
  std::int64_t bound = 0;
  for (auto v : nonsinks(g)) bound = std::max(bound, std::abs(h[v]));
  const DefectCertificate cert{(bound + 1) * max_out_degree(g), 8};

  OddModule m;
  m.space = vertex_line_space(g);
  m.F = SignOperator{0, {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    m.rho.vertices.push_back(BasisOperator::projection({full_line(v)}, cert));
  m.rho.edges.resize(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto out = g.out_edges(v);
    const Coord d = static_cast<Coord>(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto r = g.edge(out[i]).range;
      const Coord offset = i == 0 ? -d * h[v] : static_cast<Coord>(i);
      m.rho.edges[out[i]] = BasisOperator::injection({line_map(full_line(r), v, offset, d)}, cert);
    }
  }
  return m;
}

namespace {

std::int64_t graded_index(const GradedModule& m, const BasisOperator& q0, const BasisOperator& q1) {
  if (m.symmetry == GradedModule::Symmetry::Flip)
    return relative_index(q0, q1, m.space, m.certificate);
  // F = 0: the odd half carries nothing, the index is a difference of
  // (finite) dimensions.
  auto dim = [](const BasisOperator& q) {
    std::int64_t total = 0;
    for (const auto& c : q.image_cells()) {
      const auto n = count_points(c);
      if (n.infinite) throw CertificateViolation("infinite-dimensional range for zero symmetry");
      total += n.value;
    }
    return total;
  };
  return dim(q0) - dim(q1);
}

}  // namespace

VertexFunction index_k0(const GradedModule& m, const DirectedGraph& g) {
  VertexFunction out{VertexFunction::Domain::AllVertices, {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out.values.push_back(graded_index(m, m.even.vertices.at(v), m.odd.vertices.at(v)));
  if (!is_harmonic(g, out))
    throw std::runtime_error("index function of graded module is not harmonic");
  return out;
}

StarReport check_star_condition(const OddModule& m, const DirectedGraph& g) {
  StarReport report;
  using Kind = StarReport::Entry::Kind;
  auto add = [&](std::string name, Kind kind, const BasisOperator& t) {
    auto c = commutator_rank(m.F, t, m.space);
    if (kind != Kind::Edge && c.rank != 0) {
      report.passed = false;
      report.offenders.push_back(name);
    }
    report.entries.push_back({std::move(name), kind, std::move(c)});
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    add(g.vertex_name(v), Kind::Vertex, m.rho.vertices.at(v));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    add(g.edge(e).id + " " + g.edge(e).id + "*", Kind::RangeProjection,
        m.rho.edges.at(e).range_projection());
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    add(g.edge(e).id, Kind::Edge, m.rho.edges.at(e));
  return report;
}

K1Index index_k1(const OddModule& m, const DirectedGraph& g) {
  const auto star = check_star_condition(m, g);
  if (!star.passed) {
    std::string list;
    for (const auto& o : star.offenders) list += (list.empty() ? "" : ", ") + o;
    throw StarConditionError(star.offenders, "module violates the star condition at: " + list);
  }
  K1Index out;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out.edges.values.push_back(compressed_index(m.F, m.rho.edges[e], m.space));
  out.vertices.domain = VertexFunction::Domain::NonSinks;
  out.vertices.values.assign(g.vertex_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out.vertices.values[g.edge(e).source] += out.edges.values[e];

  const auto dual = dualize(vertex_complex(g));
  const auto group = cokernel(dual.boundary, dual.degree0);
  out.class_coordinates = group.reduce(nonsink_values(g, out.vertices));
  return out;
}

RelationReport check_cuntz_krieger(const Representation& rho, const DirectedGraph& g,
                                   const BasisSpace& space, Coord radius) {
  RelationReport report;
  const Window w = box_window(space, radius);
  auto fail = [&](const std::string& msg) {
    if (report.failures.size() < 16) report.failures.push_back(msg);
  };
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto b = w.at(k);
    int owners = 0;
    for (const auto& q : rho.vertices) owners += q.in_domain(b) ? 1 : 0;
    if (owners > 1) fail("vertex projections overlap at " + b.to_string());

    int edge_owners = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& t = rho.edges[e];
      const auto& edge = g.edge(e);
      if (t.in_domain(b) != rho.vertices[edge.range].in_domain(b))
        fail("support of " + edge.id + " differs from its range projection at " + b.to_string());
      if (auto y = t.apply(b); y && t.apply_inverse(*y) != b)
        fail(edge.id + " is not injective at " + b.to_string());
      if (t.in_image(b)) {
        ++edge_owners;
        if (!rho.vertices[edge.source].in_domain(b))
          fail("range of " + edge.id + " leaves its source projection at " + b.to_string());
      }
    }
    if (edge_owners > 1) fail("edge ranges overlap at " + b.to_string());
    for (auto v : nonsinks(g))
      if (rho.vertices[v].in_domain(b) && edge_owners == 0)
        fail(g.vertex_name(v) + " is not covered by its edge ranges at " + b.to_string());
  }
  return report;
}

std::int64_t graded_commutator_rank(const GradedModule& m, const BasisOperator& even,
                                    const BasisOperator& odd) {
  if (m.symmetry == GradedModule::Symmetry::Zero) return 0;
  return 2 * perturbation_rank(even, odd, m.space, m.certificate);
}

OddModule direct_sum(const OddModule& a, const OddModule& b) {
  if (a.F.coord != b.F.coord) throw std::invalid_argument("direct_sum: sign coordinates differ");
  const int offset = static_cast<int>(a.space.tags.size());
  OddModule out;
  out.space = sum_space(a.space, b.space);
  out.rho = disjoint_sum(a.rho, b.rho, offset);
  out.F = a.F;
  for (const auto& [x, y] : b.F.swaps) out.F.swaps.emplace_back(shifted(x, offset), shifted(y, offset));
  return out;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (a.symmetry != b.symmetry) throw std::invalid_argument("direct_sum: symmetries differ");
  const int offset = static_cast<int>(a.space.tags.size());
  GradedModule out;
  out.space = sum_space(a.space, b.space);
  out.even = disjoint_sum(a.even, b.even, offset);
  out.odd = disjoint_sum(a.odd, b.odd, offset);
  out.symmetry = a.symmetry;
  out.certificate = {std::max(a.certificate.radius, b.certificate.radius),
                     std::max(a.certificate.guard_width, b.certificate.guard_width)};
  return out;
}

OddModule corrupted_k1_module(const DirectedGraph& g, const VertexFunction& eta) {
  OddModule m = build_k1_module(g, eta);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& t = m.rho.edges[e];
    const Window w = box_window(m.space, t.certificate().radius + 1);
    std::optional<BasisPoint> inside, outside;
    for (std::size_t k = 0; k < w.size() && !(inside && outside); ++k) {
      auto b = w.at(k);
      if (t.in_image(b)) {
        if (!inside) inside = b;
      } else if (inside && b.tag == inside->tag) {
        outside = b;
      }
    }
    if (inside && outside) {
      m.F.swaps.emplace_back(*inside, *outside);
      return m;
    }
  }
  throw std::invalid_argument("corrupted_k1_module: no edge range is a proper part of its vertex");
}

}  // namespace khom
