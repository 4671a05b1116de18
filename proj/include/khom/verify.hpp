#pragma once

// Independent oracles, seeded random corpora and the invariant suites driven
// by `khom verify`, the unit tests and the acceptance runner. The oracles
// deliberately avoid the cell arithmetic: they enumerate finite windows and
// use rational elimination.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "khom/basis.hpp"
#include "khom/basis_operator.hpp"
#include "khom/fredholm.hpp"
#include "khom/graph.hpp"
#include "khom/int_matrix.hpp"

namespace khom::verify {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// KHOM_SEED if set and numeric, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

// ---- oracles ---------------------------------------------------------------

/// Counts length-m paths by explicit depth-first enumeration of edge sequences.
mpz_class brute_force_paths(const DirectedGraph& g, int m, std::size_t src, std::size_t dst);

/// Rank over Q by Gaussian elimination on rationals.
std::size_t rational_rank(const IntMatrix& a);

/// Rank of F T - T F restricted to the columns of box_window(space, radius).
std::int64_t window_commutator_rank(const SignOperator& f, const BasisOperator& t,
                                    const BasisSpace& space, Coord radius);

/// Rank of the commutator of the flip with rho_0(x) + rho_1(x) on H + H,
/// restricted to window columns of both copies.
std::int64_t window_graded_commutator_rank(const BasisOperator& even, const BasisOperator& odd,
                                           const BasisSpace& space, Coord radius);

/// Kernel minus cokernel dimension of P T P truncated to windows of radius
/// 2r, 3r and 4r; the common value, or nullopt if it does not stabilise.
std::optional<std::int64_t> window_compressed_index(const SignOperator& f, const BasisOperator& t,
                                                    const BasisSpace& space, Coord r);

/// Same for the graded vertex index of two diagonal projections.
std::optional<std::int64_t> window_relative_index(const BasisOperator& q0, const BasisOperator& q1,
                                                  const BasisSpace& space, Coord r);

// ---- corpora ---------------------------------------------------------------

/// Random multigraph with 1..max_vertices vertices and 0..max_edges edges.
DirectedGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges);

/// Random matrix up to max_dim x max_dim, entries in [-bound, bound], with
/// roughly the given fraction of nonzero entries.
IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long bound, double density);

/// Random element of the kernel of the dual boundary with |values| <= bound.
VertexFunction random_harmonic(std::mt19937_64& rng, const DirectedGraph& g, std::int64_t bound);

/// Random function on the non-sinks with |values| <= bound.
VertexFunction random_nonsink_function(std::mt19937_64& rng, const DirectedGraph& g,
                                       std::int64_t bound);

/// Generator for case `index` of a corpus with the given seed.
std::mt19937_64 case_rng(std::uint64_t seed, std::size_t index);

/// Graph JSON plus the vertex function, for failure messages.
std::string reproducer(const DirectedGraph& g, const VertexFunction* eta = nullptr);

// ---- suites ----------------------------------------------------------------

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Smallest failing case (by graph size, then case index).
  std::string reproducer;
  bool passed() const { return failures == 0 && cases > 0; }
};

struct CorpusSizes {
  std::size_t matrices = 1000;
  std::size_t complexes = 500;
  std::size_t paths = 200;
  std::size_t modules = 200;
  std::size_t kernels = 40;
  std::size_t additivity = 40;
};

SuiteResult snf_suite(std::uint64_t seed, std::size_t count);
/// Chain-map, homotopy, quasi-isomorphism and duality identities.
SuiteResult complexes_suite(std::uint64_t seed, std::size_t count);
SuiteResult paths_suite(std::uint64_t seed, std::size_t count);

/// index_k0 o build_k0_module = id on harmonic functions.
SuiteResult k0_roundtrip_suite(std::uint64_t seed, std::size_t count);
/// Vertex part of index_k1 o build_k1_module = id.
SuiteResult k1_roundtrip_suite(std::uint64_t seed, std::size_t count);
/// Every generator of both constructions: exact commutator rank equals the
/// brute-force rank on a window three times the certificate radius.
SuiteResult commutator_suite(std::uint64_t seed, std::size_t count);
/// Relation checks and truncated-window index oracles for both constructions.
SuiteResult module_oracle_suite(std::uint64_t seed, std::size_t count);
SuiteResult additivity_suite(std::uint64_t seed, std::size_t count);
/// Serial and OpenMP kernels agree.
SuiteResult kernels_suite(std::uint64_t seed, std::size_t count);
/// Operator-model index of every F_m against brute-force path counts.
SuiteResult lens_index_suite(int max_n, int max_p);
/// The corrupted module must fail the star condition with a rank-one
/// off-diagonal witness.
SuiteResult negative_fixture_suite();

std::vector<SuiteResult> run_all(std::uint64_t seed, const CorpusSizes& sizes = {});

}  // namespace khom::verify
