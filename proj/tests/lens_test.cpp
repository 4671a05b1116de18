#include <set>

#include <gtest/gtest.h>

#include "khom/complexes.hpp"
#include "khom/lens.hpp"
#include "khom/smith.hpp"
#include "khom/verify.hpp"

namespace khom {
namespace {

IntMatrix minus_identity(IntMatrix a) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= 1;
  return a;
}

// (D eta)(v) = sum over edges out of v of eta(r(e)), i.e. the adjacency matrix.
TEST(DualOperators, SphereTwo) {
  const auto t = t_operator(2).matrix;
  EXPECT_EQ(t, (IntMatrix{{0, 1}, {0, 0}}));
  EXPECT_EQ(D_operator(2).matrix, (IntMatrix{{1, 1}, {0, 1}}));
  for (long p = 1; p <= 7; ++p) {
    EXPECT_EQ(power(D_operator(2).matrix, static_cast<unsigned>(p)), (IntMatrix{{1, p}, {0, 1}}));
    EXPECT_EQ(lens_coboundary(2, static_cast<int>(p)), (IntMatrix{{0, p}, {0, 0}}));
  }
}

TEST(DualOperators, Nilpotent) {
  for (int n = 2; n <= 6; ++n) EXPECT_TRUE(power(t_operator(n).matrix, n).is_zero());
}

TEST(DualOperators, DIsAdjacencyOfSphereGraph) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(D_operator(n).matrix, adjacency(sphere_graph(n)));
}

TEST(DualOperators, DPowerIsAdjacencyOfLensGraph) {
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p <= 5; ++p) {
      const auto dp = power(D_operator(n).matrix, static_cast<unsigned>(p));
      EXPECT_EQ(dp, adjacency(lens_graph(n, p)));
      EXPECT_EQ(lens_coboundary(n, p), minus_identity(dp));
      const auto a = dualize(vertex_complex(lens_graph(n, p)));
      EXPECT_EQ(a.boundary, lens_coboundary(n, p));
    }
}

TEST(LensKHomology, Dimension3) {
  for (int p = 2; p <= 7; ++p) {
    const auto h = lens_k_homology(2, p);
    EXPECT_EQ(h.K1.free_rank(), 1u);
    EXPECT_EQ(h.K1.torsion(), IntVector{mpz_class(p)});
    EXPECT_EQ(h.K1.structure_string(), "Z + Z/" + std::to_string(p));
  }
}

TEST(LensKHomology, ProjectiveSpaces) {
  for (int n = 2; n <= 6; ++n) {
    const auto h = lens_k_homology(n, 2);
    EXPECT_EQ(h.K1.free_rank(), 1u);
    EXPECT_EQ(h.K1.torsion(), IntVector{mpz_class(1) << (n - 1)});
  }
}

TEST(LensKHomology, EvenGroupIsFirstDualVertex) {
  for (int n = 2; n <= 5; ++n)
    for (int p = 2; p <= 5; ++p) {
      const auto k0 = lens_k_homology(n, p).K0;
      ASSERT_EQ(k0.free_rank(), 1u);
      ASSERT_TRUE(k0.torsion().empty());
      IntVector eta1(static_cast<std::size_t>(n));
      eta1[0] = 1;
      const auto c = k0.reduce(eta1);
      ASSERT_EQ(c.size(), 1u);
      EXPECT_EQ(abs(c[0]), 1);
    }
}

TEST(Determinants, SideConditions) {
  for (int n = 2; n <= 6; ++n)
    for (int p = 2; p <= 7; ++p) {
      mpz_class pn, pn1;
      mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
      mpz_ui_pow_ui(pn1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n - 1));
      EXPECT_EQ(determinant(one_minus_t_sum(n, p)), pn);
      EXPECT_EQ(abs(determinant(lens_restricted_block(n, p))), pn1);
      EXPECT_EQ(lens_restricted_block(n, p).rows(), static_cast<std::size_t>(n - 1));
    }
}

TEST(HLModule, RangeProjectionsOfSecondVertex) {
  const auto hl = hl_module(2);
  // basis N x Z; rho(v2) is {k1 = 0}, rho(v1) is {k1 >= 1}
  const auto& v1 = hl.module.rho.vertices[0];
  const auto& v2 = hl.module.rho.vertices[1];
  EXPECT_TRUE(v2.in_domain(BasisPoint{0, {0, -3}}));
  EXPECT_FALSE(v2.in_domain(BasisPoint{0, {1, -3}}));
  EXPECT_TRUE(v1.in_domain(BasisPoint{0, {4, 7}}));
  EXPECT_FALSE(v1.in_domain(BasisPoint{0, {0, 7}}));
}

TEST(HLModule, StarAndRelations) {
  for (int n = 2; n <= 4; ++n) {
    const auto hl = hl_module(n);
    EXPECT_TRUE(check_star_condition(hl.module, hl.graph).passed) << n;
    EXPECT_TRUE(check_cuntz_krieger(hl.module.rho, hl.graph, hl.module.space, 3).passed()) << n;
  }
}

TEST(HLModule, IndexIsMinusLastDualVertex) {
  for (int n = 2; n <= 5; ++n) {
    const auto hl = hl_module(n);
    const auto idx = index_k1(hl.module, hl.graph);
    std::vector<std::int64_t> expect(static_cast<std::size_t>(n), 0);
    expect.back() = -1;
    EXPECT_EQ(idx.vertices.values, expect);
  }
}

TEST(HLModule, EdgesShiftTotalDegreeByOne) {
  const auto hl = hl_module(3);
  const auto w = box_window(hl.module.space, 3);
  for (const auto& t : hl.module.rho.edges)
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto b = w.at(i);
      if (!hl.module.space.contains(b)) continue;
      const auto y = t.apply(b);
      if (!y) continue;
      Coord before = 0, after = 0;
      for (auto c : b.coords) before += c;
      for (auto c : y->coords) after += c;
      EXPECT_EQ(after - before, 1);
    }
}

TEST(EvenCharacter, IndexIsFirstDualVertex) {
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p <= 5; ++p) {
      const auto g = lens_graph(n, p);
      const auto idx = index_k0(hl_even_character(n, p), g);
      std::vector<std::int64_t> expect(static_cast<std::size_t>(n), 0);
      expect.front() = 1;
      EXPECT_EQ(idx.values, expect);
    }
}

TEST(Eigenspace, FirstPowerIsWholeModule) {
  const auto hl = hl_module(3);
  const auto full = eigenspace_module(hl, 1, 0);
  EXPECT_EQ(index_k1(full, lens_graph(3, 1)).edges.values, index_k1(hl.module, hl.graph).edges.values);
}

TEST(Eigenspace, ResiduesPartitionBasis) {
  const int p = 3;
  const auto hl = hl_module(2);
  std::vector<OddModule> parts;
  for (int m = 0; m < p; ++m) parts.push_back(eigenspace_module(hl, p, m));
  const auto w = box_window(hl.module.space, 4);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto b = w.at(i);
    if (!hl.module.space.contains(b)) continue;
    int hits = 0;
    for (const auto& part : parts)
      for (const auto& v : part.rho.vertices) hits += v.in_domain(b) ? 1 : 0;
    EXPECT_EQ(hits, 1) << b.to_string();
  }
}

TEST(Eigenspace, OnlyLoopsAtLastVertexCarryIndex) {
  for (int n = 2; n <= 3; ++n)
    for (int p = 2; p <= 3; ++p) {
      const auto hl = hl_module(n);
      const auto gp = path_power(hl.graph, p);
      const std::string last = "e" + std::to_string(n) + std::to_string(n);
      for (int m = 0; m < p; ++m) {
        const auto idx = index_k1(eigenspace_module(hl, p, m), gp);
        for (std::size_t e = 0; e < gp.edge_count(); ++e) {
          // an edge of G^p is lambda e_nn^d iff its path ends in the loop at v_n
          const auto path = gp.edge_path(e);
          if (hl.graph.edge(path.back()).id != last) {
            EXPECT_EQ(idx.edges.values[e], 0) << gp.edge(e).id;
          }
        }
      }
    }
}

TEST(LensGenerators, DimensionThree) {
  for (int p = 2; p <= 5; ++p) {
    const auto r = lens_k1_generators(2, p);
    ASSERT_EQ(r.generators.size(), static_cast<std::size_t>(p));
    for (int m = 0; m < p; ++m) {
      const auto& f = r.generators[static_cast<std::size_t>(m)];
      EXPECT_EQ(f.index_vector, (std::vector<std::int64_t>{-m, -1}));
      EXPECT_EQ(f.path_formula, f.index_vector);
      EXPECT_FALSE(f.order.has_value());
    }
    EXPECT_EQ(r.generators[1].order_minus_f0, mpz_class(p));
    EXPECT_TRUE(r.generation_verified);
    EXPECT_TRUE(r.even_generator_verified);
  }
}

TEST(LensGenerators, PathFormulaMatchesBruteForce) {
  const auto r = verify::lens_index_suite(3, 3);
  EXPECT_TRUE(r.passed()) << r.reproducer;
}

TEST(LensGenerators, DifferencesHaveFiniteOrder) {
  const auto r = lens_k1_generators(3, 4);
  for (const auto& f : r.generators) {
    EXPECT_FALSE(f.order.has_value());
    if (f.m > 0) {
      EXPECT_TRUE(f.order_minus_f0.has_value());
    }
  }
}

TEST(LensArguments, Rejected) {
  EXPECT_THROW(t_operator(1), std::invalid_argument);
  EXPECT_THROW(lens_coboundary(2, 0), std::invalid_argument);
  EXPECT_THROW(hl_module(1), std::invalid_argument);
}

}  // namespace
}  // namespace khom
