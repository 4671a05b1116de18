#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "khom/abelian_group.hpp"
#include "khom/complexes.hpp"
#include "khom/kernels.hpp"
#include "khom/lens.hpp"
#include "khom/smith.hpp"
#include "khom/verify.hpp"

namespace khom::verify {

namespace {

struct Failure {
  std::size_t size = 0;  // ordering key for "minimal"
  std::string text;
};

using CaseFn = std::function<std::optional<Failure>(std::size_t index)>;

// Cases are independent, so they run in parallel; the reported reproducer is
// chosen deterministically.
SuiteResult run_cases(std::string name, std::size_t count, const CaseFn& fn) {
  SuiteResult result{std::move(name), count, 0, {}};
  std::vector<std::optional<Failure>> outcome(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      outcome[idx] = fn(idx);
    } catch (const std::exception& e) {
      outcome[idx] = Failure{std::numeric_limits<std::size_t>::max(), e.what()};
    }
  }
  const Failure* best = nullptr;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!outcome[i]) continue;
    ++result.failures;
    if (!best || outcome[i]->size < best->size) {
      best = &*outcome[i];
      best_index = i;
    }
  }
  if (best) result.reproducer = "case " + std::to_string(best_index) + ": " + best->text;
  return result;
}

Failure graph_failure(const DirectedGraph& g, const VertexFunction* eta, const std::string& what) {
  return {g.vertex_count() + g.edge_count(), what + "\n" + reproducer(g, eta)};
}

Failure matrix_failure(const IntMatrix& a, const std::string& what) {
  return {a.rows() * a.cols(), what + "\n" + a.to_string()};
}

bool is_unit(const mpz_class& x) { return x == 1 || x == -1; }

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e(n);
  e[i] = 1;
  return e;
}

std::optional<std::string> check_smith(const IntMatrix& a) {
  const auto s = smith(a);
  if (s.U * a * s.V != s.D) return "U A V != D";
  if (s.U * s.U_inv != IntMatrix::identity(a.rows())) return "U_inv is not the inverse of U";
  if (s.V * s.V_inv != IntMatrix::identity(a.cols())) return "V_inv is not the inverse of V";
  if (!is_unit(determinant(s.U)) || !is_unit(determinant(s.V))) return "transform not unimodular";
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return "D not diagonal";
  const auto d = s.diagonal();
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return "negative diagonal entry";
    if (d[i] != 0) ++nonzero;
    if (i + 1 < d.size()) {
      if (d[i] == 0 && d[i + 1] != 0) return "zero diagonal entry before a nonzero one";
      if (d[i] != 0 && d[i + 1] % d[i] != 0) return "divisibility chain broken";
    }
  }
  if (nonzero != s.rank) return "rank field disagrees with D";
  if (rational_rank(a) != s.rank) return "rank disagrees with rational elimination";

  const auto kb = kernel_basis(a);
  if (kb.size() != a.cols() - s.rank) return "kernel dimension != zero diagonal count";
  for (const auto& k : kb)
    for (const auto& x : a * k)
      if (x != 0) return "kernel vector not annihilated";

  std::vector<std::string> names(a.rows());
  for (std::size_t i = 0; i < names.size(); ++i) names[i] = "x" + std::to_string(i);
  const auto gp = cokernel(a, names);
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!gp.is_zero(a.column(j))) return "image column nonzero in cokernel";
  for (std::size_t i = 0; i < gp.generators().size(); ++i)
    if (gp.reduce(gp.generators()[i]) != unit_vector(gp.coordinate_count(), i))
      return "reduce(generator) is not a standard coordinate";
  if (a.rows() == a.cols()) {
    const mpz_class det = abs(determinant(a));
    if (det != 0) {
      mpz_class order = 1;
      for (const auto& t : gp.torsion()) order *= t;
      if (gp.free_rank() != 0 || order != det) return "cokernel order != |det A|";
    }
  }
  return std::nullopt;
}

bool same_group(const AbelianGroupPresentation& a, const AbelianGroupPresentation& b) {
  return a.free_rank() == b.free_rank() && a.torsion() == b.torsion();
}

std::optional<std::string> check_complexes(const DirectedGraph& g) {
  const auto A = vertex_complex(g);
  const auto B = edge_complex(g);
  const auto s = sigma(g);
  const auto t = tau(g);
  const auto h = homotopy_h(g).map;
  const auto k = homotopy_k(g).map;
  if (!is_chain_map(s, A, B)) return "sigma is not a chain map";
  if (!is_chain_map(t, B, A)) return "tau is not a chain map";
  const auto I = [](std::size_t n) { return IntMatrix::identity(n); };
  if (s.degree0 * t.degree0 - I(B.degree0.size()) != B.boundary * h) return "sigma0 tau0 - 1 != d h";
  if (s.degree1 * t.degree1 - I(B.degree1.size()) != h * B.boundary) return "sigma1 tau1 - 1 != h d";
  if (t.degree0 * s.degree0 - I(A.degree0.size()) != A.boundary * k) return "tau0 sigma0 - 1 != del k";
  if (t.degree1 * s.degree1 - I(A.degree1.size()) != k * A.boundary) return "tau1 sigma1 - 1 != k del";

  if (!same_group(cokernel(A.boundary, A.degree0), cokernel(B.boundary, B.degree0)))
    return "coker del and coker d differ";
  if (!same_group(kernel(A.boundary, A.degree1), kernel(B.boundary, B.degree1)))
    return "ker del and ker d differ";
  const auto dual = dualize(A);
  if (dualize(dual).boundary != A.boundary) return "dualize is not an involution";
  const auto co = cokernel(A.boundary, A.degree0);
  if (cokernel(dual.boundary, dual.degree0).torsion() != co.torsion())
    return "dual cokernel torsion differs";
  if (kernel(dual.boundary, dual.degree1).free_rank() != co.free_rank())
    return "rank of dual kernel != free rank of cokernel";
  return std::nullopt;
}

std::optional<std::string> check_paths(const DirectedGraph& g) {
  const auto a = adjacency(g);
  IntMatrix pw = IntMatrix::identity(g.vertex_count());
  for (int m = 0; m <= 6; ++m) {
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
      for (std::size_t j = 0; j < g.vertex_count(); ++j) {
        const auto c = count_paths(g, m, i, j);
        if (c != brute_force_paths(g, m, i, j) || c != pw(i, j))
          return "count_paths mismatch at m=" + std::to_string(m);
      }
    pw = pw * a;
  }
  for (int p = 1; p <= 3; ++p) {
    const auto gp = path_power(g, p);
    const auto ap = adjacency(gp);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
      for (std::size_t j = 0; j < g.vertex_count(); ++j)
        if (ap(i, j) != count_paths(g, p, i, j))
          return "path_power multiplicity mismatch at p=" + std::to_string(p);
  }
  if (sinks(g).empty() && adjacency(path_power(path_power(g, 2), 2)) != adjacency(path_power(g, 4)))
    return "path_power(path_power(g,2),2) != path_power(g,4)";
  return std::nullopt;
}

DirectedGraph module_graph(std::mt19937_64& rng) { return random_graph(rng, 6, 12); }

}  // namespace

SuiteResult snf_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("smith normal form", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed, i);
    std::uniform_real_distribution<double> density(0.15, 0.9);
    const auto a = random_matrix(rng, 12, 9, density(rng));
    if (auto err = check_smith(a)) return matrix_failure(a, *err);
    return std::nullopt;
  });
}

SuiteResult complexes_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("complexes and homotopies", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0xc0ffee, i);
    const auto g = random_graph(rng, 8, 16);
    if (auto err = check_complexes(g)) return graph_failure(g, nullptr, *err);
    return std::nullopt;
  });
}

SuiteResult paths_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("path counting", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0x9a7b5, i);
    const auto g = random_graph(rng, 8, 10);
    if (auto err = check_paths(g)) return graph_failure(g, nullptr, *err);
    return std::nullopt;
  });
}

SuiteResult k0_roundtrip_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("K^0 round trip", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0xe0e0, i);
    const auto g = module_graph(rng);
    const auto eta = random_harmonic(rng, g, 5);
    const auto m = build_k0_module(g, eta);
    if (index_k0(m, g).values != eta.values) return graph_failure(g, &eta, "index_k0 != eta");
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (perturbation_rank(m.even.vertices[v], m.odd.vertices[v], m.space, m.certificate) !=
          std::abs(eta.values[v]))
        return graph_failure(g, &eta, "rank(rho1(v) - rho0(v)) != |eta(v)| at " + g.vertex_name(v));
    return std::nullopt;
  });
}

SuiteResult k1_roundtrip_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("K^1 round trip", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0x0dd, i);
    const auto g = module_graph(rng);
    const auto eta = random_nonsink_function(rng, g, 5);
    const auto idx = index_k1(build_k1_module(g, eta), g);
    for (auto v : nonsinks(g))
      if (idx.vertices.values[v] != eta.values[v])
        return graph_failure(g, &eta, "index_k1 != eta at " + g.vertex_name(v));
    return std::nullopt;
  });
}

SuiteResult commutator_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("commutator ranks vs 3R window", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0xe0e0, i);
    const auto g = module_graph(rng);
    const auto eta0 = random_harmonic(rng, g, 5);
    const auto m0 = build_k0_module(g, eta0);
    const Coord w0 = 3 * m0.certificate.radius;
    auto graded = [&](const BasisOperator& a, const BasisOperator& b) {
      return graded_commutator_rank(m0, a, b) == window_graded_commutator_rank(a, b, m0.space, w0);
    };
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (!graded(m0.even.vertices[v], m0.odd.vertices[v]))
        return graph_failure(g, &eta0, "graded commutator rank mismatch at " + g.vertex_name(v));
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (!graded(m0.even.edges[e], m0.odd.edges[e]))
        return graph_failure(g, &eta0, "graded commutator rank mismatch at " + g.edge(e).id);

    auto rng1 = case_rng(seed ^ 0x0dd, i);
    const auto g1 = module_graph(rng1);
    const auto eta1 = random_nonsink_function(rng1, g1, 5);
    const auto m1 = build_k1_module(g1, eta1);
    auto odd = [&](const BasisOperator& t) {
      return commutator_rank(m1.F, t, m1.space).rank ==
             window_commutator_rank(m1.F, t, m1.space, 3 * t.certificate().radius);
    };
    for (std::size_t v = 0; v < g1.vertex_count(); ++v)
      if (!odd(m1.rho.vertices[v]))
        return graph_failure(g1, &eta1, "commutator rank mismatch at " + g1.vertex_name(v));
    for (std::size_t e = 0; e < g1.edge_count(); ++e)
      if (!odd(m1.rho.edges[e]) || !odd(m1.rho.edges[e].range_projection()))
        return graph_failure(g1, &eta1, "commutator rank mismatch at " + g1.edge(e).id);
    return std::nullopt;
  });
}

SuiteResult module_oracle_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("relations and window index oracles", count,
                   [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0xe0e0, i);
    const auto g = module_graph(rng);
    const auto eta0 = random_harmonic(rng, g, 5);
    const auto m0 = build_k0_module(g, eta0);
    const Coord r0 = m0.certificate.radius;
    if (!check_cuntz_krieger(m0.even, g, m0.space, r0).passed() ||
        !check_cuntz_krieger(m0.odd, g, m0.space, r0).passed())
      return graph_failure(g, &eta0, "relations fail for the graded module");
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const auto expect =
          window_relative_index(m0.even.vertices[v], m0.odd.vertices[v], m0.space, r0);
      if (!expect ||
          *expect != relative_index(m0.even.vertices[v], m0.odd.vertices[v], m0.space, m0.certificate))
        return graph_failure(g, &eta0, "vertex index disagrees with window oracle");
    }

    auto rng1 = case_rng(seed ^ 0x0dd, i);
    const auto g1 = module_graph(rng1);
    const auto eta1 = random_nonsink_function(rng1, g1, 5);
    const auto m1 = build_k1_module(g1, eta1);
    if (!check_cuntz_krieger(m1.rho, g1, m1.space, 2 * (m1.rho.vertices.front().certificate().radius))
             .passed())
      return graph_failure(g1, &eta1, "relations fail for the odd module");
    for (std::size_t e = 0; e < g1.edge_count(); ++e) {
      const auto& t = m1.rho.edges[e];
      const auto expect = window_compressed_index(m1.F, t, m1.space, t.certificate().radius);
      if (!expect || *expect != compressed_index(m1.F, t, m1.space))
        return graph_failure(g1, &eta1, "edge index disagrees with window oracle at " + g1.edge(e).id);
    }
    return std::nullopt;
  });
}

SuiteResult additivity_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("direct-sum additivity", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0xadd, i);
    const auto g = random_graph(rng, 4, 8);
    const auto a0 = random_harmonic(rng, g, 4);
    const auto b0 = random_harmonic(rng, g, 4);
    const auto sum0 = index_k0(direct_sum(build_k0_module(g, a0), build_k0_module(g, b0)), g);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (sum0.values[v] != a0.values[v] + b0.values[v])
        return graph_failure(g, &a0, "graded index not additive");
    const auto a1 = random_nonsink_function(rng, g, 4);
    const auto b1 = random_nonsink_function(rng, g, 4);
    const auto sum1 = index_k1(direct_sum(build_k1_module(g, a1), build_k1_module(g, b1)), g);
    for (auto v : nonsinks(g))
      if (sum1.vertices.values[v] != a1.values[v] + b1.values[v])
        return graph_failure(g, &a1, "odd index not additive");
    return std::nullopt;
  });
}

SuiteResult kernels_suite(std::uint64_t seed, std::size_t count) {
  return run_cases("serial vs OpenMP kernels", count, [&](std::size_t i) -> std::optional<Failure> {
    auto rng = case_rng(seed ^ 0x4e4e, i);
    const auto g = module_graph(rng);
    const auto eta = random_nonsink_function(rng, g, 5);
    const auto m = build_k1_module(g, eta);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& t = m.rho.edges[e];
      // A zero-radius certificate with a wide shell makes the scan find the
      // real defects.
      const DefectCertificate probe{0, t.certificate().radius + 4};
      if (kernels::shell_defects(t, m.F, m.space, probe) !=
          kernels::serial::shell_defects(t, m.F, m.space, probe))
        return graph_failure(g, &eta, "shell_defects differ");
      const auto w = box_window(m.space, 2 * t.certificate().radius);
      if (kernels::window_defect_count(t, m.F, w) != kernels::serial::window_defect_count(t, m.F, w))
        return graph_failure(g, &eta, "window_defect_count differs");
    }
    for (int len = 0; len <= 5; ++len)
      if (kernels::path_count_matrix(g, len) != kernels::serial::path_count_matrix(g, len))
        return graph_failure(g, &eta, "path_count_matrix differs");
    return std::nullopt;
  });
}

SuiteResult lens_index_suite(int max_n, int max_p) {
  std::vector<std::pair<int, int>> params;
  for (int n = 2; n <= max_n; ++n)
    for (int p = 1; p <= max_p; ++p) params.emplace_back(n, p);
  return run_cases("lens eigenspace indices", params.size(), [&](std::size_t i) -> std::optional<Failure> {
    const auto [n, p] = params[i];
    const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
    const auto hl = hl_module(n);
    const auto gp = path_power(hl.graph, p);
    if (!check_star_condition(hl.module, hl.graph).passed)
      return Failure{i, tag + ": HL module fails the star condition"};
    std::vector<std::int64_t> edge_sum(gp.edge_count(), 0);
    for (int m = 0; m < p; ++m) {
      const auto idx = index_k1(eigenspace_module(hl, p, m), gp);
      for (int v = 0; v < n; ++v) {
        const mpz_class expect = -brute_force_paths(hl.graph, m, static_cast<std::size_t>(v),
                                               static_cast<std::size_t>(n - 1));
        if (expect != idx.vertices.values[static_cast<std::size_t>(v)])
          return Failure{i, tag + " m=" + std::to_string(m) + ": index at v" + std::to_string(v + 1) +
                                " is " + std::to_string(idx.vertices.values[static_cast<std::size_t>(v)]) +
                                ", paths give " + expect.get_str()};
      }
      for (std::size_t e = 0; e < gp.edge_count(); ++e) edge_sum[e] += idx.edges.values[e];
    }
    if (index_k1(eigenspace_module(hl, p, std::nullopt), gp).edges.values != edge_sum)
      return Failure{i, tag + ": eigenspace indices do not sum to the full index"};
    return std::nullopt;
  });
}

SuiteResult negative_fixture_suite() {
  return run_cases("corrupted module is rejected", 1, [&](std::size_t) -> std::optional<Failure> {
    const auto g = sphere_graph(2);
    const VertexFunction eta{VertexFunction::Domain::NonSinks, {1, 0}};
    const auto m = corrupted_k1_module(g, eta);
    const auto report = check_star_condition(m, g);
    if (report.passed) return Failure{0, "corrupted module passed the star condition"};
    const bool witness = std::any_of(report.entries.begin(), report.entries.end(), [](const auto& e) {
      return e.commutator.off_diagonal_rank == 1 && e.commutator.rank == 2;
    });
    if (!witness) return Failure{0, "no rank-one witness in the star report"};
    try {
      index_k1(m, g);
    } catch (const StarConditionError&) {
      return std::nullopt;
    }
    return Failure{0, "index_k1 accepted the corrupted module"};
  });
}

std::vector<SuiteResult> run_all(std::uint64_t seed, const CorpusSizes& sizes) {
  return {snf_suite(seed, sizes.matrices),
          complexes_suite(seed, sizes.complexes),
          paths_suite(seed, sizes.paths),
          k0_roundtrip_suite(seed, sizes.modules),
          k1_roundtrip_suite(seed, sizes.modules),
          commutator_suite(seed, sizes.modules),
          module_oracle_suite(seed, sizes.modules),
          additivity_suite(seed, sizes.additivity),
          kernels_suite(seed, sizes.kernels),
          lens_index_suite(3, 4),
          negative_fixture_suite()};
}

}  // namespace khom::verify
