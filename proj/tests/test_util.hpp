#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "stochnet/graph.hpp"
#include "stochnet/rng.hpp"

namespace stochnet::testutil {

// Random labeled graph with edge probability p.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.next_unit() < p) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

// Random graph with a mix of structures: sometimes plain G(n,p), sometimes a
// disjoint union of denser blocks (to exercise component logic).
inline Graph random_structured_graph(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int mode = static_cast<int>(rng.next_below(3));
  if (mode == 0) return random_graph(n, 0.08 + 0.5 * rng.next_unit(), rng.next());
  // Split into blocks; keep blocks dense, drop cross edges with high prob.
  const int blocks = 2 + static_cast<int>(rng.next_below(3));
  std::vector<int> label(n);
  for (int v = 0; v < n; ++v) label[v] = static_cast<int>(rng.next_below(blocks));
  std::vector<Edge> edges;
  const double p_in = 0.6 + 0.35 * rng.next_unit();
  const double p_cross = mode == 1 ? 0.0 : 0.05 * rng.next_unit();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.next_unit() < (label[u] == label[v] ? p_in : p_cross))
        edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

}  // namespace stochnet::testutil
