#include "khom/report.hpp"

#include <sstream>

#include "khom/complexes.hpp"

namespace khom {

using nlohmann::json;

namespace {

json order_json(const std::optional<mpz_class>& order) {
  return order ? json(order->get_str()) : json("infinite");
}

const char* kind_name(StarReport::Entry::Kind k) {
  switch (k) {
    case StarReport::Entry::Kind::Vertex: return "vertex";
    case StarReport::Entry::Kind::RangeProjection: return "range_projection";
    case StarReport::Entry::Kind::Edge: return "edge";
  }
  return "?";
}

}  // namespace

json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json to_json(const AbelianGroupPresentation& gp) {
  json out;
  out["structure"] = gp.structure_string();
  out["primary"] = gp.primary_string();
  out["free_rank"] = gp.free_rank();
  out["torsion"] = to_json(gp.torsion());
  out["basis"] = gp.ambient_basis();
  out["generators"] = json::array();
  for (std::size_t i = 0; i < gp.generators().size(); ++i) {
    const bool torsion = i < gp.torsion().size();
    out["generators"].push_back({{"expression", gp.generator_expression(i)},
                                 {"vector", to_json(gp.generators()[i])},
                                 {"order", torsion ? json(gp.torsion()[i].get_str()) : json("infinite")}});
  }
  return out;
}

json to_json(const StarReport& r) {
  json out;
  out["passed"] = r.passed;
  out["offenders"] = r.offenders;
  out["commutators"] = json::array();
  for (const auto& e : r.entries) {
    json entry{{"generator", e.generator}, {"kind", kind_name(e.kind)}, {"rank", e.commutator.rank}};
    if (e.commutator.off_diagonal_rank) entry["off_diagonal_rank"] = *e.commutator.off_diagonal_rank;
    json witness = json::array();
    for (const auto& b : e.commutator.witness) witness.push_back(b.to_string());
    entry["witness"] = std::move(witness);
    out["commutators"].push_back(std::move(entry));
  }
  return out;
}

json to_json(const LensReport& r) {
  json out;
  out["n"] = r.n;
  out["p"] = r.p;
  out["K0"] = to_json(r.groups.K0);
  out["K1"] = to_json(r.groups.K1);
  out["generators"] = json::array();
  for (const auto& g : r.generators)
    out["generators"].push_back({{"m", g.m},
                                 {"index_vector", g.index_vector},
                                 {"path_formula", g.path_formula},
                                 {"class", to_json(g.class_coordinates)},
                                 {"order", order_json(g.order)},
                                 {"order_minus_F0", order_json(g.order_minus_f0)}});
  out["checks"] = {{"generation", r.generation_verified},
                   {"even_generator", r.even_generator_verified},
                   {"det_one_minus_t_sum", r.one_minus_t_determinant.get_str()},
                   {"det_restricted_block", r.restricted_block_determinant.get_str()}};
  return out;
}

json kgroups_report(const DirectedGraph& g) {
  const auto a = vertex_complex(g);
  return {{"K0", to_json(cokernel(a.boundary, a.degree0))},
          {"K1", to_json(kernel(a.boundary, a.degree1))}};
}

json khomology_report(const DirectedGraph& g) {
  const auto dual = dualize(vertex_complex(g));
  return {{"K^0", to_json(kernel(dual.boundary, dual.degree1))},
          {"K^1", to_json(cokernel(dual.boundary, dual.degree0))}};
}

json k0_module_report(const DirectedGraph& g, const VertexFunction& eta) {
  const auto m = build_k0_module(g, eta);
  const auto idx = index_k0(m, g);
  json out;
  json index = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) index[g.vertex_name(v)] = idx.values[v];
  out["index"] = std::move(index);
  json ranks = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    ranks[g.vertex_name(v)] = graded_commutator_rank(m, m.even.vertices[v], m.odd.vertices[v]);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    ranks[g.edge(e).id] = graded_commutator_rank(m, m.even.edges[e], m.odd.edges[e]);
  out["commutator_ranks"] = std::move(ranks);
  out["certificate_radius"] = m.certificate.radius;
  out["relations"] = check_cuntz_krieger(m.even, g, m.space, m.certificate.radius).passed() &&
                     check_cuntz_krieger(m.odd, g, m.space, m.certificate.radius).passed();
  return out;
}

json k1_module_report(const DirectedGraph& g, const VertexFunction& eta) {
  return k1_module_report(g, build_k1_module(g, eta));
}

json k1_module_report(const DirectedGraph& g, const OddModule& m) {
  json out;
  const auto star = check_star_condition(m, g);
  out["star_condition"] = to_json(star);
  if (!star.passed) return out;
  const auto idx = index_k1(m, g);
  json edges = json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) edges[g.edge(e).id] = idx.edges.values[e];
  json vertices = json::object();
  for (auto v : nonsinks(g)) vertices[g.vertex_name(v)] = idx.vertices.values[v];
  out["edge_index"] = std::move(edges);
  out["vertex_index"] = std::move(vertices);
  out["class"] = to_json(idx.class_coordinates);
  const auto dual = dualize(vertex_complex(g));
  out["K^1"] = cokernel(dual.boundary, dual.degree0).structure_string();
  return out;
}

std::string group_text(const std::string& label, const AbelianGroupPresentation& gp) {
  std::ostringstream os;
  os << label << " = " << gp.structure_string();
  if (gp.primary_string() != gp.structure_string()) os << "  (" << gp.primary_string() << ")";
  os << "\n";
  for (std::size_t i = 0; i < gp.generators().size(); ++i) {
    os << "  g" << i + 1 << " = " << gp.generator_expression(i);
    if (i < gp.torsion().size())
      os << "  [order " << gp.torsion()[i].get_str() << "]";
    else
      os << "  [infinite order]";
    os << "\n";
  }
  return os.str();
}

}  // namespace khom
