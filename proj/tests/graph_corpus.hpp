#pragma once

// Exhaustive corpus of non-isomorphic simple graphs for small n, built by
// BFS over edge additions with a canonical form (minimum edge bitmask over
// all vertex permutations).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "stochnet/graph.hpp"

namespace stochnet::testutil {

namespace corpus_detail {

inline int edge_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  // Position of (u,v) in the canonical edge enumeration.
  int idx = 0;
  for (int a = 0; a < u; ++a) idx += n - 1 - a;
  return idx + (v - u - 1);
}

// For each permutation of 0..n-1, the induced permutation of edge indices.
inline std::vector<std::vector<int>> edge_index_maps(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const int m = n * (n - 1) / 2;
  std::vector<std::vector<int>> maps;
  do {
    std::vector<int> map(m);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        map[edge_index(n, u, v)] = edge_index(n, perm[u], perm[v]);
    maps.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return maps;
}

inline std::uint32_t apply_map(std::uint32_t mask, const std::vector<int>& map) {
  std::uint32_t out = 0;
  while (mask) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    out |= 1u << map[i];
  }
  return out;
}

inline std::uint32_t canonical(std::uint32_t mask,
                               const std::vector<std::vector<int>>& maps) {
  std::uint32_t best = ~0u;
  for (const auto& map : maps) best = std::min(best, apply_map(mask, map));
  return best;
}

}  // namespace corpus_detail

// All non-isomorphic graphs on exactly n vertices, as edge bitmasks in
// canonical edge order.
inline std::vector<std::uint32_t> nonisomorphic_masks(int n) {
  const auto maps = corpus_detail::edge_index_maps(n);
  std::set<std::uint32_t> level = {0};
  std::vector<std::uint32_t> all = {0};
  const int m = n * (n - 1) / 2;
  while (!level.empty()) {
    std::set<std::uint32_t> next;
    for (std::uint32_t g : level) {
      for (int e = 0; e < m; ++e) {
        if (g >> e & 1) continue;
        next.insert(corpus_detail::canonical(g | (1u << e), maps));
      }
    }
    for (std::uint32_t g : next) all.push_back(g);
    level = std::move(next);
  }
  return all;
}

inline Graph graph_from_mask(int n, std::uint32_t mask) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (mask >> corpus_detail::edge_index(n, u, v) & 1) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

}  // namespace stochnet::testutil
