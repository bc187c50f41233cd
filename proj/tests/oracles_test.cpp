#include "stochnet/oracles.hpp"

#include <gtest/gtest.h>

#include "stochnet/rng.hpp"
#include "test_util.hpp"

namespace stochnet {
namespace {

using testutil::complete_graph;
using testutil::cycle_graph;
using testutil::path_graph;
using testutil::random_structured_graph;

Graph two_triangles() {
  return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

TEST(CutSize, KnownValues) {
  EXPECT_EQ(cut_size(complete_graph(4), VertexSet({0})), 3);
  EXPECT_EQ(cut_size(path_graph(4), VertexSet({0, 1})), 1);
  EXPECT_EQ(cut_size(cycle_graph(6), VertexSet({0, 1, 2})), 2);
}

TEST(CutSize, DomainErrors) {
  EXPECT_THROW(cut_size(complete_graph(3), VertexSet()), DomainError);
  EXPECT_THROW(cut_size(complete_graph(3), VertexSet({0, 1, 2})), DomainError);
}

TEST(CutSize, ComplementSymmetryAndPotentialBound) {
  SplitMix64 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = 3 + static_cast<int>(rng.next_below(8));
    const Graph g = random_structured_graph(n, rng.next());
    const std::uint64_t mask =
        1 + rng.next_below((1ULL << n) - 2);  // nonempty proper subset
    const VertexSet u = VertexSet::from_mask(mask, n);
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (!u.contains(v)) rest.push_back(v);
    const VertexSet comp(rest);
    EXPECT_EQ(cut_size(g, u), cut_size(g, comp));
    EXPECT_LE(cut_size(g, u), potential(n, static_cast<std::int64_t>(u.size())));
  }
}

TEST(Components, KnownPartitions) {
  EXPECT_EQ(connected_components(complete_graph(4)).size(), 1u);
  const auto singletons = connected_components(Graph(3));
  ASSERT_EQ(singletons.size(), 3u);
  for (const auto& part : singletons) EXPECT_EQ(part.size(), 1u);
  const auto parts = connected_components(two_triangles());
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], VertexSet({0, 1, 2}));
  EXPECT_EQ(parts[1], VertexSet({3, 4, 5}));
}

TEST(Hamming, ComponentsMinusOne) {
  EXPECT_EQ(hamming_additions_to_connected(complete_graph(4)), 0);
  EXPECT_EQ(hamming_additions_to_connected(Graph(5)), 4);
  Graph four_parts(7, {{0, 1}, {2, 3}, {4, 5}});
  EXPECT_EQ(hamming_additions_to_connected(four_parts), 3);
}

TEST(EdgeConnectivity, KnownValues) {
  EXPECT_EQ(edge_connectivity(cycle_graph(8)), 2);
  EXPECT_EQ(edge_connectivity(complete_graph(5)), 4);
  EXPECT_EQ(edge_connectivity(two_triangles()), 0);
  EXPECT_THROW(edge_connectivity(Graph(1)), DomainError);
}

TEST(EdgeConnectivity, MatchesExhaustiveOnRandomGraphs) {
  SplitMix64 rng(22);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = 2 + static_cast<int>(rng.next_below(8));  // n <= 9
    const Graph g = random_structured_graph(n, rng.next());
    EXPECT_EQ(edge_connectivity(g), edge_connectivity_exhaustive(g))
        << "n=" << n << " iter=" << iter;
  }
  EXPECT_THROW(edge_connectivity_exhaustive(complete_graph(17)), CapacityError);
}

TEST(IsKConnected, KnownValues) {
  EXPECT_TRUE(is_k_connected(cycle_graph(8), 2));
  EXPECT_FALSE(is_k_connected(cycle_graph(8), 3));
  EXPECT_FALSE(is_k_connected(two_triangles(), 1));
  EXPECT_TRUE(is_k_connected(Graph(1), 7));  // vacuous cuts
  EXPECT_THROW(is_k_connected(complete_graph(3), 0), DomainError);
}

TEST(SkOracle, KnownValues) {
  Graph g(10, {});
  {
    std::vector<Edge> edges;
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) edges.emplace_back(u, v);
    for (int u = 3; u < 10; ++u)
      for (int v = u + 1; v < 10; ++v) edges.emplace_back(u, v);
    g = Graph(10, edges);
  }
  EXPECT_EQ(s_k_oracle(g, 1), 3);  // smallest component
  EXPECT_EQ(s_k_oracle(cycle_graph(6), 3), 1);
  EXPECT_EQ(s_k_oracle(complete_graph(5), 4), 5);  // S_4 empty
  EXPECT_EQ(s_k_oracle(Graph(1), 3), 1);
  EXPECT_THROW(s_k_oracle(complete_graph(21), 1), CapacityError);
}

TEST(SkOracle, EqualsNIffKConnected) {
  SplitMix64 rng(33);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = 2 + static_cast<int>(rng.next_below(8));
    const Graph g = random_structured_graph(n, rng.next());
    for (int k = 1; k <= 3; ++k)
      EXPECT_EQ(s_k_oracle(g, k) == n, is_k_connected(g, k));
  }
}

TEST(SkOracle, MonotoneInKAndUnderAddition) {
  SplitMix64 rng(44);
  for (int iter = 0; iter < 80; ++iter) {
    const int n = 3 + static_cast<int>(rng.next_below(8));  // n <= 10
    const Graph g = random_structured_graph(n, rng.next());
    for (int k = 1; k <= 3; ++k)
      EXPECT_GE(s_k_oracle(g, k), s_k_oracle(g, k + 1));
    // Supergraph: add a few random non-edges.
    std::vector<Edge> extra;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!g.has_edge(u, v) && rng.next_unit() < 0.3) extra.emplace_back(u, v);
    const Graph super = g.with_edges(extra);
    for (int k = 1; k <= 3; ++k)
      EXPECT_GE(s_k_oracle(super, k), s_k_oracle(g, k));
  }
}

TEST(MinimalSmallCutSets, KnownValues) {
  const auto two_tri = minimal_small_cut_sets(two_triangles(), 1);
  ASSERT_EQ(two_tri.size(), 2u);
  EXPECT_EQ(two_tri[0].set, VertexSet({0, 1, 2}));
  EXPECT_EQ(two_tri[1].set, VertexSet({3, 4, 5}));
  EXPECT_EQ(two_tri[0].cut_size, 0);
  EXPECT_EQ(two_tri[0].potential, 9);

  EXPECT_EQ(minimal_small_cut_sets(cycle_graph(6), 3).size(), 6u);  // all singletons
  EXPECT_TRUE(minimal_small_cut_sets(complete_graph(5), 4).empty());
}

TEST(MinimalSmallCutSets, InduceConnectedSubgraphs) {
  SplitMix64 rng(55);
  for (int iter = 0; iter < 80; ++iter) {
    const int n = 3 + static_cast<int>(rng.next_below(8));
    const Graph g = random_structured_graph(n, rng.next());
    for (int k = 1; k <= 3; ++k) {
      for (const auto& report : minimal_small_cut_sets(g, k)) {
        EXPECT_TRUE(is_connected(induced_subgraph(g, report.set)))
            << "n=" << n << " k=" << k;
        EXPECT_LT(report.cut_size, k);
      }
    }
  }
}

TEST(InducedSubgraph, RelabelsInOrder) {
  Graph g(5, {{0, 2}, {2, 4}, {1, 3}});
  Graph sub = induced_subgraph(g, VertexSet({0, 2, 4}));
  EXPECT_EQ(sub, Graph(3, {{0, 1}, {1, 2}}));
  EXPECT_THROW(induced_subgraph(g, VertexSet()), DomainError);
}

}  // namespace
}  // namespace stochnet
