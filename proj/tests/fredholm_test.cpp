#include <algorithm>

#include <gtest/gtest.h>

#include "khom/fredholm.hpp"
#include "khom/verify.hpp"

namespace khom {
namespace {

using Domain = VertexFunction::Domain;

DirectedGraph one_loop() { return DirectedGraph(GraphSpec{{"v"}, {{"e", "v", "v"}}}); }

VertexFunction all(std::vector<std::int64_t> v) { return {Domain::AllVertices, std::move(v)}; }
VertexFunction ns(std::vector<std::int64_t> v) { return {Domain::NonSinks, std::move(v)}; }

TEST(Harmonic, SphereTwo) {
  const auto g = sphere_graph(2);
  EXPECT_TRUE(is_harmonic(g, all({1, 0})));
  EXPECT_TRUE(is_harmonic(g, all({0, 0})));
  EXPECT_FALSE(is_harmonic(g, all({0, 1})));
}

TEST(K1Module, OneLoopCommutatorRanks) {
  const auto g = one_loop();
  const auto m = build_k1_module(g, ns({1}));
  // e_0 acts as n -> n - 1: the only sign change is at n = 0
  const auto r = commutator_rank(m.F, m.rho.edges[0], m.space);
  EXPECT_EQ(r.rank, 1);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_EQ(r.witness[0].coords, std::vector<Coord>{0});
  EXPECT_EQ(commutator_rank(m.F, m.rho.vertices[0], m.space).rank, 0);
}

TEST(K1Module, OtherEdgesCommute) {
  const auto g = sphere_graph(3);
  const auto m = build_k1_module(g, ns({2, -1, 3}));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto out = g.out_edges(edge.source);
    if (edge.id == g.edge(out.front()).id) continue;  // e_0
    EXPECT_EQ(commutator_rank(m.F, m.rho.edges[e], m.space).rank, 0) << edge.id;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    EXPECT_EQ(commutator_rank(m.F, m.rho.vertices[v], m.space).rank, 0);
}

TEST(K1Module, CompressedIndexOfFirstEdgeIsEta) {
  const auto g = sphere_graph(3);
  const std::vector<std::int64_t> eta{4, -2, 1};
  const auto m = build_k1_module(g, ns(eta));
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto out = g.out_edges(v);
    EXPECT_EQ(compressed_index(m.F, m.rho.edges[out.front()], m.space), eta[v]);
    for (std::size_t k = 1; k < out.size(); ++k)
      EXPECT_EQ(compressed_index(m.F, m.rho.edges[out[k]], m.space), 0);
  }
}

TEST(K1Module, IdentityHasIndexZero) {
  const auto g = one_loop();
  const auto m = build_k1_module(g, ns({3}));
  EXPECT_EQ(compressed_index(m.F, m.rho.vertices[0], m.space), 0);
}

TEST(K1Module, OneLoopIndexIsEta) {
  for (std::int64_t k = -4; k <= 4; ++k) {
    const auto g = one_loop();
    const auto idx = index_k1(build_k1_module(g, ns({k})), g);
    EXPECT_EQ(idx.edges.values, std::vector<std::int64_t>{k});
    EXPECT_EQ(idx.vertices.values, std::vector<std::int64_t>{k});
  }
}

TEST(K1Module, SphereTwoVertexIndex) {
  const auto g = sphere_graph(2);
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b) {
      const auto idx = index_k1(build_k1_module(g, ns({a, b})), g);
      EXPECT_EQ(idx.vertices.values, (std::vector<std::int64_t>{a, b}));
      EXPECT_EQ(idx.vertices.domain, Domain::NonSinks);
    }
}

TEST(K1Module, ZeroEtaGivesZeroIndices) {
  const auto g = sphere_graph(3);
  const auto idx = index_k1(build_k1_module(g, ns({0, 0, 0})), g);
  for (auto x : idx.edges.values) EXPECT_EQ(x, 0);
  for (const auto& c : idx.class_coordinates) EXPECT_EQ(c, 0);
}

TEST(K1Module, SinkValuesIgnored) {
  const DirectedGraph g(GraphSpec{{"v", "w"}, {{"a", "v", "w"}, {"b", "v", "v"}}});
  const auto idx = index_k1(build_k1_module(g, ns({2, 0})), g);
  EXPECT_EQ(idx.vertices.values[0], 2);
}

TEST(StarCondition, ConstructionPasses) {
  const auto g = sphere_graph(3);
  const auto report = check_star_condition(build_k1_module(g, ns({1, 2, 3})), g);
  EXPECT_TRUE(report.passed);
  EXPECT_TRUE(report.offenders.empty());
  const auto count = [&](StarReport::Entry::Kind k) {
    return std::count_if(report.entries.begin(), report.entries.end(),
                         [k](const auto& e) { return e.kind == k; });
  };
  EXPECT_EQ(count(StarReport::Entry::Kind::Vertex), 3);
  EXPECT_EQ(count(StarReport::Entry::Kind::RangeProjection), 6);
  EXPECT_EQ(count(StarReport::Entry::Kind::Edge), 6);
}

TEST(StarCondition, CorruptedFixtureFails) {
  const auto g = sphere_graph(2);
  const auto eta = ns({1, 0});
  const auto m = corrupted_k1_module(g, eta);
  const auto report = check_star_condition(m, g);
  EXPECT_FALSE(report.passed);
  ASSERT_FALSE(report.offenders.empty());
  const auto bad = std::find_if(report.entries.begin(), report.entries.end(),
                                [](const auto& e) { return e.commutator.rank != 0 &&
                                                           e.kind != StarReport::Entry::Kind::Edge; });
  ASSERT_NE(bad, report.entries.end());
  EXPECT_EQ(bad->commutator.off_diagonal_rank, 1);
  EXPECT_EQ(bad->commutator.rank, 2);
  EXPECT_FALSE(bad->commutator.witness.empty());
  try {
    index_k1(m, g);
    FAIL() << "index_k1 accepted the corrupted module";
  } catch (const StarConditionError& e) {
    EXPECT_EQ(e.offenders(), report.offenders);
  }
}

TEST(K0Module, ZeroEtaIsUnperturbed) {
  const auto g = sphere_graph(2);
  const auto m = build_k0_module(g, all({0, 0}));
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    EXPECT_EQ(perturbation_rank(m.even.vertices[v], m.odd.vertices[v], m.space, m.certificate), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    EXPECT_EQ(graded_commutator_rank(m, m.even.edges[e], m.odd.edges[e]), 0);
  EXPECT_EQ(index_k0(m, g).values, (std::vector<std::int64_t>{0, 0}));
}

TEST(K0Module, SphereTwoFirstVertex) {
  const auto g = sphere_graph(2);
  const auto m = build_k0_module(g, all({1, 0}));
  EXPECT_EQ(relative_index(m.even.vertices[0], m.odd.vertices[0], m.space, m.certificate), 1);
  EXPECT_EQ(index_k0(m, g).values, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(graded_commutator_rank(m, m.even.vertices[0], m.odd.vertices[0]), 2);
}

TEST(K0Module, PerturbationRankIsAbsEta) {
  // harmonic on the loop-with-tail graph v -> v, v -> w, w -> w: eta(v) = eta(v) + eta(w)
  const DirectedGraph g(GraphSpec{{"v", "w"}, {{"a", "v", "v"}, {"b", "v", "w"}, {"c", "w", "w"}}});
  for (std::int64_t k = -5; k <= 5; ++k) {
    const auto m = build_k0_module(g, all({k, 0}));
    EXPECT_EQ(perturbation_rank(m.even.vertices[0], m.odd.vertices[0], m.space, m.certificate),
              std::abs(k));
    EXPECT_EQ(index_k0(m, g).values[0], k);
    EXPECT_TRUE(check_cuntz_krieger(m.odd, g, m.space, m.certificate.radius).passed());
  }
}

TEST(K0Module, NonHarmonicNamesVertex) {
  const auto g = sphere_graph(2);
  try {
    build_k0_module(g, all({0, 1}));
    FAIL() << "non-harmonic eta accepted";
  } catch (const HarmonicityError& e) {
    EXPECT_EQ(e.vertex(), "v1");
  }
}

TEST(K0Module, SinkValuesAreFree) {
  const DirectedGraph g(GraphSpec{{"v", "w"}, {{"e", "v", "w"}}});
  const auto eta = all({-3, -3});
  EXPECT_EQ(index_k0(build_k0_module(g, eta), g).values, eta.values);
}

TEST(CuntzKrieger, DetectsBrokenRepresentation) {
  const auto g = sphere_graph(2);
  auto m = build_k1_module(g, ns({0, 0}));
  const Coord r = 2 * m.rho.vertices.front().certificate().radius + 2;
  EXPECT_TRUE(check_cuntz_krieger(m.rho, g, m.space, r).passed());
  std::swap(m.rho.edges[0], m.rho.edges[2]);
  EXPECT_FALSE(check_cuntz_krieger(m.rho, g, m.space, r).passed());
}

TEST(DirectSum, IndicesAdd) {
  const auto g = sphere_graph(2);
  const auto odd = direct_sum(build_k1_module(g, ns({2, -1})), build_k1_module(g, ns({-5, 4})));
  EXPECT_EQ(index_k1(odd, g).vertices.values, (std::vector<std::int64_t>{-3, 3}));
  EXPECT_TRUE(check_star_condition(odd, g).passed);
  const auto even = direct_sum(build_k0_module(g, all({2, 0})), build_k0_module(g, all({3, 0})));
  EXPECT_EQ(index_k0(even, g).values, (std::vector<std::int64_t>{5, 0}));
}

TEST(Corpus, RoundTrips) {
  const auto seed = verify::seed_from_env();
  for (const auto& r : {verify::k0_roundtrip_suite(seed, 60), verify::k1_roundtrip_suite(seed, 60),
                        verify::module_oracle_suite(seed, 30), verify::additivity_suite(seed, 20)})
    EXPECT_TRUE(r.passed()) << r.name << "\n" << r.reproducer;
}

TEST(Oracles, WindowIndexOnOneLoop) {
  const auto g = one_loop();
  const auto m = build_k1_module(g, ns({-2}));
  const auto& t = m.rho.edges[0];
  EXPECT_EQ(verify::window_compressed_index(m.F, t, m.space, t.certificate().radius), -2);
  EXPECT_EQ(verify::window_commutator_rank(m.F, t, m.space, 3 * t.certificate().radius), 2);
}

}  // namespace
}  // namespace khom
