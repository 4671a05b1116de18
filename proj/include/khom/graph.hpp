#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace khom {

class IntMatrix;

/// Thrown when a graph description violates the data-model invariants, or
/// when an operation receives an argument outside its domain.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unvalidated graph description, as read from a file. Vertex and edge
/// references are by name.
struct GraphSpec {
  struct EdgeSpec {
    std::string id;
    std::string src;
    std::string dst;
  };
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
};

struct Violation {
  std::string element;  // offending vertex or edge identifier
  std::string message;
};

/// Every invariant failure of `spec`; empty iff it describes a valid graph.
std::vector<Violation> validate(const GraphSpec& spec);

struct Edge {
  std::string id;
  std::size_t source = 0;
  std::size_t range = 0;
};

/// Finite directed multigraph. Vertex and edge order is insertion order and
/// fixes every matrix basis downstream. Immutable once built.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Validates `spec`; throws GraphError listing the first violation.
  explicit DirectedGraph(const GraphSpec& spec);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(std::size_t v) const { return vertex_names_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::string> vertex_names() const { return vertex_names_; }

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  /// Edges with source `v`, in insertion order. This is the e_0, ..., e_{d-1}
  /// ordering used by the module constructions.
  std::span<const std::size_t> out_edges(std::size_t v) const { return out_edges_.at(v); }
  std::size_t out_degree(std::size_t v) const { return out_edges_.at(v).size(); }
  bool is_sink(std::size_t v) const { return out_edges_.at(v).empty(); }

  /// For path-power graphs: the underlying base-graph edge indices of edge
  /// `e`, in traversal order. Empty for graphs that are not path powers.
  std::span<const std::size_t> edge_path(std::size_t e) const;
  bool has_edge_paths() const { return !edge_paths_.empty(); }

  GraphSpec to_spec() const;

 private:
  friend DirectedGraph path_power(const DirectedGraph& g, int p);

  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_edges_;
  std::vector<std::vector<std::size_t>> edge_paths_;
};

std::vector<Violation> validate(const DirectedGraph& g);

/// Vertex indices, in insertion order.
std::vector<std::size_t> sinks(const DirectedGraph& g);
std::vector<std::size_t> nonsinks(const DirectedGraph& g);

/// (i, j) entry = number of edges from vertex i to vertex j.
IntMatrix adjacency(const DirectedGraph& g);

/// Number of length-m directed paths from `src` to `dst`.
mpz_class count_paths(const DirectedGraph& g, int m, std::size_t src, std::size_t dst);
mpz_class count_paths(const DirectedGraph& g, int m, const std::string& src,
                      const std::string& dst);

/// Graph on the same vertices with one edge per length-p path of `g`. Edge ids
/// join the underlying edge ids with '.'.
DirectedGraph path_power(const DirectedGraph& g, int p);

/// G_n: vertices v1..vn, edges e_ij for i <= j from v_i to v_j.
DirectedGraph sphere_graph(int n);

/// G_n^p = path_power(sphere_graph(n), p).
DirectedGraph lens_graph(int n, int p);

}  // namespace khom
