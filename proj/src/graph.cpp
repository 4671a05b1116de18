#include "khom/graph.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "khom/int_matrix.hpp"

namespace khom {

std::vector<Violation> validate(const GraphSpec& spec) {
  std::vector<Violation> out;
  std::set<std::string> vertex_ids;
  for (const auto& v : spec.vertices) {
    if (v.empty()) out.push_back({v, "vertex identifier is empty"});
    if (!vertex_ids.insert(v).second) out.push_back({v, "duplicate vertex identifier"});
  }
  std::set<std::string> edge_ids;
  for (const auto& e : spec.edges) {
    if (e.id.empty()) out.push_back({e.id, "edge identifier is empty"});
    if (!edge_ids.insert(e.id).second) out.push_back({e.id, "duplicate edge identifier"});
    if (!vertex_ids.contains(e.src))
      out.push_back({e.id, "edge source '" + e.src + "' is not a vertex"});
    if (!vertex_ids.contains(e.dst))
      out.push_back({e.id, "edge range '" + e.dst + "' is not a vertex"});
  }
  return out;
}

DirectedGraph::DirectedGraph(const GraphSpec& spec) {
  auto violations = validate(spec);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw GraphError("invalid graph: " + v.element + ": " + v.message);
  }
  vertex_names_ = spec.vertices;
  out_edges_.resize(vertex_names_.size());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) index.emplace(vertex_names_[i], i);
  edges_.reserve(spec.edges.size());
  for (const auto& e : spec.edges) {
    Edge edge{e.id, index.at(e.src), index.at(e.dst)};
    out_edges_[edge.source].push_back(edges_.size());
    edges_.push_back(std::move(edge));
  }
}

std::optional<std::size_t> DirectedGraph::find_vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i)
    if (vertex_names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> DirectedGraph::find_edge(const std::string& id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

std::span<const std::size_t> DirectedGraph::edge_path(std::size_t e) const {
  if (edge_paths_.empty()) return {};
  return edge_paths_.at(e);
}

GraphSpec DirectedGraph::to_spec() const {
  GraphSpec spec;
  spec.vertices = vertex_names_;
  for (const auto& e : edges_)
    spec.edges.push_back({e.id, vertex_names_[e.source], vertex_names_[e.range]});
  return spec;
}

std::vector<Violation> validate(const DirectedGraph& g) { return validate(g.to_spec()); }

std::vector<std::size_t> sinks(const DirectedGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) out.push_back(v);
  return out;
}

std::vector<std::size_t> nonsinks(const DirectedGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) out.push_back(v);
  return out;
}

IntMatrix adjacency(const DirectedGraph& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (const auto& e : g.edges()) a(e.source, e.range) += 1;
  return a;
}

mpz_class count_paths(const DirectedGraph& g, int m, std::size_t src, std::size_t dst) {
  if (m < 0) throw GraphError("count_paths: negative path length");
  if (src >= g.vertex_count() || dst >= g.vertex_count())
    throw GraphError("count_paths: unknown vertex");
  // paths[v] = number of length-k paths from src ending at v
  std::vector<mpz_class> paths(g.vertex_count());
  paths[src] = 1;
  for (int k = 0; k < m; ++k) {
    std::vector<mpz_class> next(g.vertex_count());
    for (const auto& e : g.edges()) next[e.range] += paths[e.source];
    paths = std::move(next);
  }
  return paths[dst];
}

mpz_class count_paths(const DirectedGraph& g, int m, const std::string& src,
                      const std::string& dst) {
  auto s = g.find_vertex(src);
  auto d = g.find_vertex(dst);
  if (!s) throw GraphError("count_paths: unknown vertex '" + src + "'");
  if (!d) throw GraphError("count_paths: unknown vertex '" + dst + "'");
  return count_paths(g, m, *s, *d);
}

namespace {

void extend_paths(const DirectedGraph& g, std::size_t at, int remaining,
                  std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t e : g.out_edges(at)) {
    prefix.push_back(e);
    extend_paths(g, g.edge(e).range, remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

DirectedGraph path_power(const DirectedGraph& g, int p) {
  if (p < 1) throw GraphError("path_power: path length must be at least 1");
  DirectedGraph out;
  out.vertex_names_.assign(g.vertex_names().begin(), g.vertex_names().end());
  out.out_edges_.resize(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> prefix;
    extend_paths(g, v, p, prefix, paths);
    for (auto& path : paths) {
      std::string id;
      for (std::size_t k = 0; k < path.size(); ++k) {
        if (k) id += '.';
        id += g.edge(path[k]).id;
      }
      out.out_edges_[v].push_back(out.edges_.size());
      out.edges_.push_back(Edge{std::move(id), v, g.edge(path.back()).range});
      out.edge_paths_.push_back(std::move(path));
    }
  }
  return out;
}

DirectedGraph sphere_graph(int n) {
  if (n < 2) throw GraphError("sphere_graph: n must be at least 2");
  GraphSpec spec;
  for (int i = 1; i <= n; ++i) spec.vertices.push_back("v" + std::to_string(i));
  const std::string sep = n >= 10 ? "_" : "";
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      spec.edges.push_back({"e" + std::to_string(i) + sep + std::to_string(j),
                            "v" + std::to_string(i), "v" + std::to_string(j)});
  return DirectedGraph(spec);
}

DirectedGraph lens_graph(int n, int p) { return path_power(sphere_graph(n), p); }

}  // namespace khom
