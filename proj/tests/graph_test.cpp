#include <algorithm>

#include <gtest/gtest.h>

#include "khom/graph.hpp"
#include "khom/verify.hpp"

namespace khom {
namespace {

DirectedGraph one_edge() { return DirectedGraph(GraphSpec{{"v", "w"}, {{"e", "v", "w"}}}); }

std::vector<std::string> names(const DirectedGraph& g, const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (auto i : ids) out.push_back(g.vertex_name(i));
  return out;
}

TEST(Validate, SingleVertexIsValid) {
  GraphSpec spec{{"v"}, {}};
  EXPECT_TRUE(validate(spec).empty());
  EXPECT_EQ(sinks(DirectedGraph(spec)), std::vector<std::size_t>{0});
}

TEST(Validate, UnknownSourceNamesTheEdge) {
  GraphSpec spec{{"v"}, {{"e1", "x", "v"}}};
  const auto violations = validate(spec);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].element, "e1");
  EXPECT_THROW(DirectedGraph{spec}, GraphError);
}

TEST(Validate, DuplicateIdentifiers) {
  EXPECT_FALSE(validate(GraphSpec{{"v", "v"}, {}}).empty());
  EXPECT_FALSE(validate(GraphSpec{{"v"}, {{"e", "v", "v"}, {"e", "v", "v"}}}).empty());
}

TEST(Validate, SphereGraphValidates) { EXPECT_TRUE(validate(sphere_graph(2)).empty()); }

TEST(Sinks, SphereHasNone) {
  const auto g = sphere_graph(2);
  EXPECT_TRUE(sinks(g).empty());
  EXPECT_EQ(names(g, nonsinks(g)), (std::vector<std::string>{"v1", "v2"}));
}

TEST(Sinks, RangeOfSingleEdge) {
  const auto g = one_edge();
  EXPECT_EQ(names(g, sinks(g)), std::vector<std::string>{"w"});
  EXPECT_EQ(names(g, nonsinks(g)), std::vector<std::string>{"v"});
}

TEST(CountPaths, Examples) {
  EXPECT_EQ(count_paths(sphere_graph(2), 1, "v1", "v2"), 1);
  EXPECT_EQ(count_paths(one_edge(), 0, "v", "v"), 1);
  EXPECT_EQ(count_paths(one_edge(), 0, "v", "w"), 0);
  EXPECT_EQ(count_paths(sphere_graph(3), 2, "v1", "v3"), 3);
  EXPECT_EQ(verify::brute_force_paths(sphere_graph(3), 2, 0, 2), 3);
}

TEST(CountPaths, Errors) {
  EXPECT_THROW(count_paths(one_edge(), 1, "v", "nope"), GraphError);
  EXPECT_THROW(count_paths(one_edge(), -1, 0, 1), GraphError);
}

TEST(CountPaths, MatchesAdjacencyPowerOnRandomGraphs) {
  for (std::size_t i = 0; i < 60; ++i) {
    auto rng = verify::case_rng(7, i);
    const auto g = verify::random_graph(rng, 8, 10);
    IntMatrix pw = IntMatrix::identity(g.vertex_count());
    for (int m = 0; m <= 6; ++m) {
      for (std::size_t s = 0; s < g.vertex_count(); ++s)
        for (std::size_t d = 0; d < g.vertex_count(); ++d) {
          ASSERT_EQ(count_paths(g, m, s, d), pw(s, d));
          ASSERT_EQ(verify::brute_force_paths(g, m, s, d), pw(s, d));
        }
      pw = pw * adjacency(g);
    }
  }
}

TEST(PathPower, FirstPowerIsIsomorphic) {
  const auto g = sphere_graph(2);
  const auto g1 = path_power(g, 1);
  EXPECT_EQ(adjacency(g1), adjacency(g));
  EXPECT_EQ(g1.edge_count(), g.edge_count());
}

TEST(PathPower, SquareOfSphereTwo) {
  const auto g2 = path_power(sphere_graph(2), 2);
  EXPECT_EQ(adjacency(g2), (IntMatrix{{1, 2}, {0, 1}}));
  EXPECT_EQ(g2.edge_count(), 4u);
}

TEST(PathPower, EdgeIdsEncodePaths) {
  const auto g = sphere_graph(2);
  const auto g2 = path_power(g, 2);
  for (std::size_t e = 0; e < g2.edge_count(); ++e) {
    const auto path = g2.edge_path(e);
    ASSERT_EQ(path.size(), 2u);
    EXPECT_EQ(g2.edge(e).id, g.edge(path[0]).id + "." + g.edge(path[1]).id);
    EXPECT_EQ(g2.edge(e).source, g.edge(path[0]).source);
    EXPECT_EQ(g2.edge(e).range, g.edge(path[1]).range);
  }
}

TEST(PathPower, OutDegreeIsRowSumOfPower) {
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p <= 4; ++p) {
      const auto g = sphere_graph(n);
      const auto gp = path_power(g, p);
      const auto ap = power(adjacency(g), static_cast<unsigned>(p));
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        mpz_class row = 0;
        for (std::size_t j = 0; j < g.vertex_count(); ++j) row += ap(i, j);
        EXPECT_EQ(mpz_class(static_cast<unsigned long>(gp.out_degree(i))), row);
      }
    }
}

TEST(PathPower, CompositionOfPowers) {
  for (std::size_t i = 0; i < 30; ++i) {
    auto rng = verify::case_rng(11, i);
    const auto g = verify::random_graph(rng, 5, 7);
    if (!sinks(g).empty()) continue;
    EXPECT_EQ(adjacency(path_power(path_power(g, 2), 3)), adjacency(path_power(g, 6)));
  }
}

TEST(PathPower, RejectsNonPositivePower) { EXPECT_THROW(path_power(sphere_graph(2), 0), GraphError); }

TEST(PathPower, StopsAtSinks) {
  const auto g2 = path_power(one_edge(), 2);
  EXPECT_EQ(g2.edge_count(), 0u);
}

TEST(SphereGraph, Shape) {
  const auto g = sphere_graph(2);
  EXPECT_EQ(g.vertex_count(), 2u);
  ASSERT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.edge(0).id, "e11");
  EXPECT_EQ(g.edge(1).id, "e12");
  EXPECT_EQ(g.edge(2).id, "e22");
  EXPECT_EQ(sphere_graph(3).edge_count(), 6u);
  for (int n = 2; n <= 6; ++n) EXPECT_TRUE(sinks(sphere_graph(n)).empty());
  EXPECT_THROW(sphere_graph(1), GraphError);
}

TEST(LensGraph, Examples) {
  EXPECT_EQ(adjacency(lens_graph(2, 2)), adjacency(path_power(sphere_graph(2), 2)));
  EXPECT_EQ(adjacency(lens_graph(3, 1)), adjacency(sphere_graph(3)));
  for (int p = 1; p <= 6; ++p) {
    const auto g = lens_graph(2, p);
    EXPECT_EQ(adjacency(g), (IntMatrix{{1, p}, {0, 1}}));
    EXPECT_EQ(g.edge_count(), static_cast<std::size_t>(p + 2));
  }
}

TEST(Graph, LookupAndOrder) {
  const auto g = sphere_graph(3);
  EXPECT_EQ(g.find_vertex("v2"), 1u);
  EXPECT_FALSE(g.find_vertex("v9").has_value());
  EXPECT_EQ(g.find_edge("e23"), 4u);
  const auto out = g.out_edges(0);
  EXPECT_TRUE(std::equal(out.begin(), out.end(), std::vector<std::size_t>{0, 1, 2}.begin()));
  EXPECT_EQ(DirectedGraph(g.to_spec()).to_spec().edges.size(), g.edge_count());
}

}  // namespace
}  // namespace khom
