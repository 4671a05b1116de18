#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "khom/complexes.hpp"
#include "khom/graph_io.hpp"
#include "khom/smith.hpp"
#include "khom/verify.hpp"

namespace khom::verify {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("KHOM_SEED");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  return *end == '\0' ? v : fallback;
}

std::mt19937_64 case_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

DirectedGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  std::uniform_int_distribution<std::size_t> ne(0, max_edges);
  const std::size_t v = nv(rng);
  const std::size_t e = ne(rng);
  std::uniform_int_distribution<std::size_t> pick(0, v - 1);
  GraphSpec spec;
  for (std::size_t i = 0; i < v; ++i) spec.vertices.push_back("v" + std::to_string(i + 1));
  for (std::size_t i = 0; i < e; ++i)
    spec.edges.push_back({"e" + std::to_string(i + 1), spec.vertices[pick(rng)], spec.vertices[pick(rng)]});
  return DirectedGraph(spec);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long bound, double density) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(-bound, bound);
  std::bernoulli_distribution nonzero(density);
  IntMatrix a(dim(rng), dim(rng));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (nonzero(rng)) a(i, j) = entry(rng);
  return a;
}

VertexFunction random_harmonic(std::mt19937_64& rng, const DirectedGraph& g, std::int64_t bound) {
  VertexFunction eta{VertexFunction::Domain::AllVertices,
                     std::vector<std::int64_t>(g.vertex_count(), 0)};
  const auto dual = dualize(vertex_complex(g));
  const auto basis = kernel_basis(dual.boundary);
  if (basis.empty()) return eta;
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int attempt = 0; attempt < 32; ++attempt) {
    IntVector x(g.vertex_count());
    for (const auto& k : basis) {
      const int c = attempt < 16 ? coeff(rng) : (coeff(rng) / 2);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * k[i];
    }
    const bool small = std::all_of(x.begin(), x.end(), [&](const mpz_class& v) {
      return abs(v) <= static_cast<long>(bound);
    });
    if (!small) continue;
    for (std::size_t i = 0; i < x.size(); ++i) eta.values[i] = x[i].get_si();
    return eta;
  }
  return eta;
}

VertexFunction random_nonsink_function(std::mt19937_64& rng, const DirectedGraph& g,
                                       std::int64_t bound) {
  VertexFunction eta{VertexFunction::Domain::NonSinks,
                     std::vector<std::int64_t>(g.vertex_count(), 0)};
  std::uniform_int_distribution<std::int64_t> value(-bound, bound);
  for (auto v : nonsinks(g)) eta.values[v] = value(rng);
  return eta;
}

std::string reproducer(const DirectedGraph& g, const VertexFunction* eta) {
  std::ostringstream os;
  os << graph_to_json(g.to_spec(), -1);
  if (eta) {
    os << "\neta:";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (eta->domain == VertexFunction::Domain::AllVertices || !g.is_sink(v))
        os << " " << g.vertex_name(v) << "=" << eta->values[v];
  }
  return os.str();
}

}  // namespace khom::verify
