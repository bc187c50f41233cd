#include "stochnet/graph.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"

namespace stochnet {
namespace {

using testutil::complete_graph;

TEST(Graph, BasicCounts) {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(g.edge_count(), 3);
  EXPECT_EQ(g.max_edges(), 6);
  EXPECT_EQ(g.non_edge_count(), 3);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_FALSE(g.has_edge(2, 2));
}

TEST(Graph, RejectsInvalidEdges) {
  EXPECT_THROW(Graph(0), DomainError);
  EXPECT_THROW(Graph(3, {{0, 0}}), DomainError);
  EXPECT_THROW(Graph(3, {{0, 3}}), DomainError);
  EXPECT_THROW(Graph(3, {{-1, 2}}), DomainError);
  EXPECT_THROW(Graph(3, {{0, 1}, {0, 1}}), DomainError);
  EXPECT_THROW(make_edge(2, 2), DomainError);
}

TEST(Graph, EdgesCanonicalAndSorted) {
  Graph g(4, {{2, 3}, {0, 2}, {0, 1}});
  const std::vector<Edge> want = {{0, 1}, {0, 2}, {2, 3}};
  EXPECT_EQ(g.edges(), want);
  EXPECT_EQ(make_edge(3, 1), (Edge{1, 3}));
}

TEST(Graph, Adjacency) {
  Graph g(4, {{0, 1}, {0, 2}, {2, 3}});
  const auto adj = g.adjacency();
  EXPECT_EQ(adj[0], (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(adj[3], (std::vector<Vertex>{2}));
}

TEST(Graph, WithEdgesIsUnion) {
  Graph g(4, {{0, 1}});
  Graph h = g.with_edges({{0, 1}, {2, 3}, {1, 2}});
  EXPECT_EQ(h, Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(g.with_edges({}), g);
}

TEST(Graph, CompleteGraphIsFull) {
  EXPECT_EQ(complete_graph(5).non_edge_count(), 0);
}

TEST(VertexSet, Basics) {
  VertexSet s({3, 1, 1, 2});
  EXPECT_EQ(s.members(), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(VertexSet::from_mask(0b1011, 4).members(), (std::vector<Vertex>{0, 1, 3}));
}

TEST(TextFormat, RoundTrip) {
  Graph g(5, {{0, 4}, {1, 2}});
  EXPECT_EQ(format_graph(g), "5 2\n0 4\n1 2\n");
  EXPECT_EQ(parse_graph(format_graph(g)), g);
}

TEST(TextFormat, RejectsMalformedInput) {
  EXPECT_THROW(parse_graph(""), DomainError);
  EXPECT_THROW(parse_graph("3 1\n2 1\n"), DomainError);   // u >= v
  EXPECT_THROW(parse_graph("3 1\n1 1\n"), DomainError);   // self-loop
  EXPECT_THROW(parse_graph("3 2\n0 1\n"), DomainError);   // truncated
  EXPECT_THROW(parse_graph("3 2\n0 1\n0 1\n"), DomainError);  // duplicate
  EXPECT_THROW(parse_graph("0 0\n"), DomainError);
  EXPECT_THROW(parse_graph("3 1\n0 5\n"), DomainError);   // out of range
}

}  // namespace
}  // namespace stochnet
