#include "khom/complexes.hpp"

namespace khom {

namespace {

// Position of each vertex in the V_ns list, or -1 for sinks.
std::vector<long> nonsink_positions(const DirectedGraph& g) {
  std::vector<long> pos(g.vertex_count(), -1);
  long k = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) pos[v] = k++;
  return pos;
}

// Position of each sink in the E + V_s basis, or -1 for non-sinks.
std::vector<long> sink_positions(const DirectedGraph& g) {
  std::vector<long> pos(g.vertex_count(), -1);
  long k = static_cast<long>(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) pos[v] = k++;
  return pos;
}

std::vector<std::string> names_of(const DirectedGraph& g, const std::vector<std::size_t>& vs) {
  std::vector<std::string> out;
  for (auto v : vs) out.push_back(g.vertex_name(v));
  return out;
}

std::vector<std::string> edge_and_sink_names(const DirectedGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) out.push_back(e.id);
  for (auto v : sinks(g)) out.push_back(g.vertex_name(v));
  return out;
}

std::vector<std::string> edge_names(const DirectedGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) out.push_back(e.id);
  return out;
}

}  // namespace

TwoTermComplex vertex_complex(const DirectedGraph& g) {
  auto ns = nonsinks(g);
  TwoTermComplex c{names_of(g, ns), std::vector<std::string>(g.vertex_names().begin(),
                                                             g.vertex_names().end()),
                   IntMatrix(g.vertex_count(), ns.size())};
  for (std::size_t col = 0; col < ns.size(); ++col) {
    const auto v = ns[col];
    for (auto e : g.out_edges(v)) c.boundary(g.edge(e).range, col) += 1;
    c.boundary(v, col) -= 1;
  }
  return c;
}

TwoTermComplex edge_complex(const DirectedGraph& g) {
  auto sink_pos = sink_positions(g);
  TwoTermComplex c{edge_names(g), edge_and_sink_names(g),
                   IntMatrix(g.edge_count() + sinks(g).size(), g.edge_count())};
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto r = g.edge(e).range;
    if (g.is_sink(r)) {
      c.boundary(static_cast<std::size_t>(sink_pos[r]), e) += 1;
    } else {
      for (auto f : g.out_edges(r)) c.boundary(f, e) += 1;
    }
    c.boundary(e, e) -= 1;
  }
  return c;
}

ComplexMap sigma(const DirectedGraph& g) {
  auto ns_pos = nonsink_positions(g);
  auto sink_pos = sink_positions(g);
  const auto ns_count = nonsinks(g).size();
  const auto b0 = g.edge_count() + sinks(g).size();
  ComplexMap m{IntMatrix(g.edge_count(), ns_count), IntMatrix(b0, g.vertex_count())};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      m.degree0(static_cast<std::size_t>(sink_pos[v]), v) = 1;
      continue;
    }
    for (auto e : g.out_edges(v)) {
      m.degree1(e, static_cast<std::size_t>(ns_pos[v])) += 1;
      m.degree0(e, v) += 1;
    }
  }
  return m;
}

ComplexMap tau(const DirectedGraph& g) {
  auto ns_pos = nonsink_positions(g);
  auto sink_pos = sink_positions(g);
  const auto ns_count = nonsinks(g).size();
  const auto b0 = g.edge_count() + sinks(g).size();
  ComplexMap m{IntMatrix(ns_count, g.edge_count()), IntMatrix(g.vertex_count(), b0)};
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto r = g.edge(e).range;
    if (!g.is_sink(r)) m.degree1(static_cast<std::size_t>(ns_pos[r]), e) = 1;
    m.degree0(r, e) = 1;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) m.degree0(v, static_cast<std::size_t>(sink_pos[v])) = 1;
  return m;
}

Homotopy homotopy_h(const DirectedGraph& g) {
  const auto b0 = g.edge_count() + sinks(g).size();
  Homotopy h{IntMatrix(g.edge_count(), b0)};
  for (std::size_t e = 0; e < g.edge_count(); ++e) h.map(e, e) = 1;
  return h;
}

Homotopy homotopy_k(const DirectedGraph& g) {
  auto ns_pos = nonsink_positions(g);
  Homotopy k{IntMatrix(nonsinks(g).size(), g.vertex_count())};
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (ns_pos[v] >= 0) k.map(static_cast<std::size_t>(ns_pos[v]), v) = 1;
  return k;
}

TwoTermComplex dualize(const TwoTermComplex& c) {
  auto toggle = [](const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names)
      out.push_back(!n.empty() && n.back() == '^' ? n.substr(0, n.size() - 1) : n + "^");
    return out;
  };
  return TwoTermComplex{toggle(c.degree0), toggle(c.degree1), c.boundary.transpose()};
}

bool is_chain_map(const ComplexMap& f, const TwoTermComplex& source, const TwoTermComplex& target) {
  return target.boundary * f.degree1 == f.degree0 * source.boundary;
}

}  // namespace khom
