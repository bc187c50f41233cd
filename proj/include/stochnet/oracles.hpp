#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stochnet/graph.hpp"

namespace stochnet {

inline constexpr int kEnumerationBound = 20;  // exhaustive subset oracles

struct CutReport {
  VertexSet set;
  std::int64_t cut_size = 0;
  std::int64_t potential = 0;  // d(|U|) = |U|(n-|U|)
};

// Provenance of a witness: which machinery found it.
struct WitnessFromOracle {};
struct WitnessFromSequential {
  Vertex start;
};
struct WitnessFromDistributedRun {
  std::uint32_t root_id = 0;
  std::uint32_t repetition = 0;
};
using WitnessSource =
    std::variant<WitnessFromOracle, WitnessFromSequential, WitnessFromDistributedRun>;

// A vertex set W with |W| <= s_bound and c(W) < k: the rejection certificate
// for k-connectivity.
struct WitnessReport {
  VertexSet set;
  std::int64_t cut_size = 0;
  int k = 0;
  int s_bound = 0;
  WitnessSource source;
};

// c(U) = |E(U, V\U)|. U must be a proper nonempty subset of V.
inline std::int64_t cut_size(const Graph& g, const VertexSet& u) {
  if (u.empty()) throw DomainError("cut_size: U must be nonempty");
  if (u.size() >= static_cast<std::size_t>(g.n()))
    throw DomainError("cut_size: U must be a proper subset of V");
  std::int64_t c = 0;
  for (const auto& [a, b] : g.edges())
    c += u.contains(a) != u.contains(b);
  return c;
}

inline std::int64_t potential(int n, std::int64_t t) {
  return t * (static_cast<std::int64_t>(n) - t);
}

// Partition of V into connected components, each sorted, ordered by their
// smallest vertex.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<int> comp(g.n(), -1);
  std::vector<VertexSet> parts;
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < g.n(); ++start) {
    if (comp[start] != -1) continue;
    const int id = static_cast<int>(parts.size());
    std::vector<Vertex> members;
    stack.push_back(start);
    comp[start] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (Vertex w : adj[v]) {
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    parts.emplace_back(std::move(members));
  }
  return parts;
}

inline bool is_connected(const Graph& g) {
  return connected_components(g).size() == 1;
}

// Observation: adding (#components - 1) edges connects the graph.
inline std::int64_t hamming_additions_to_connected(const Graph& g) {
  return static_cast<std::int64_t>(connected_components(g).size()) - 1;
}

namespace detail {

// Adjacency rows as bitmasks; only valid for n <= 64.
inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> adj(g.n(), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= 1ULL << v;
    adj[v] |= 1ULL << u;
  }
  return adj;
}

inline std::int64_t cut_of_mask(const std::vector<std::uint64_t>& adj,
                                std::uint64_t mask) {
  std::int64_t c = 0;
  std::uint64_t rest = ~mask;
  for (std::uint64_t bits = mask; bits;) {
    int v = std::countr_zero(bits);
    bits &= bits - 1;
    c += std::popcount(adj[v] & rest);
  }
  return c;
}

// Next bit permutation with the same popcount (Gosper's hack).
inline std::uint64_t next_subset_same_size(std::uint64_t v) {
  std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace detail

// Global minimum edge cut (Stoer-Wagner, unit weights). 0 iff disconnected.
inline std::int64_t edge_connectivity(const Graph& g) {
  const int n = g.n();
  if (n < 2) throw DomainError("edge_connectivity: need n >= 2");
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [u, v] : g.edges()) w[u][v] = w[v][u] = 1;

  std::vector<int> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  while (vertices.size() > 1) {
    // Maximum-adjacency order; last vertex's connectivity to the rest is a
    // cut-of-the-phase.
    std::vector<std::int64_t> conn(vertices.size(), 0);
    std::vector<bool> added(vertices.size(), false);
    int prev = -1, last = -1;
    for (std::size_t step = 0; step < vertices.size(); ++step) {
      int pick = -1;
      for (std::size_t i = 0; i < vertices.size(); ++i)
        if (!added[i] && (pick == -1 || conn[i] > conn[pick]))
          pick = static_cast<int>(i);
      added[pick] = true;
      prev = last;
      last = pick;
      for (std::size_t i = 0; i < vertices.size(); ++i)
        if (!added[i]) conn[i] += w[vertices[pick]][vertices[i]];
    }
    best = std::min(best, conn[last]);
    // Merge last into prev.
    int a = vertices[prev], b = vertices[last];
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      int v = vertices[i];
      w[a][v] += w[b][v];
      w[v][a] += w[v][b];
    }
    vertices.erase(vertices.begin() + last);
  }
  return best;
}

// Cross-check oracle: minimum of c(U) over all nonempty proper subsets.
inline std::int64_t edge_connectivity_exhaustive(const Graph& g) {
  const int n = g.n();
  if (n < 2) throw DomainError("edge_connectivity_exhaustive: need n >= 2");
  if (n > 16) throw CapacityError("edge_connectivity_exhaustive: n > 16");
  const auto adj = detail::adjacency_masks(g);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::uint64_t all = (n == 64) ? ~0ULL : (1ULL << n) - 1;
  for (std::uint64_t mask = 1; mask < all; ++mask)
    best = std::min(best, detail::cut_of_mask(adj, mask));
  return best;
}

// n = 1 is k-connected for all k (no cuts exist).
inline bool is_k_connected(const Graph& g, int k) {
  if (k < 1) throw DomainError("is_k_connected: k must be >= 1");
  if (g.n() == 1) return true;
  if (k == 1) return is_connected(g);
  // Min degree is an upper bound on edge connectivity.
  std::vector<int> deg(g.n(), 0);
  for (const auto& [u, v] : g.edges()) ++deg[u], ++deg[v];
  if (*std::min_element(deg.begin(), deg.end()) < k) return false;
  return edge_connectivity(g) >= k;
}

// s_k(G): smallest |U| with c(U) < k; n when no such set exists. Exhaustive,
// by increasing subset size with early exit.
inline int s_k_oracle(const Graph& g, int k,
                      int enumeration_bound = kEnumerationBound) {
  if (k < 1) throw DomainError("s_k_oracle: k must be >= 1");
  const int n = g.n();
  if (n > enumeration_bound || n > 63)
    throw CapacityError("s_k_oracle: n exceeds enumeration bound");
  if (n == 1) return n;  // no proper subsets: S_k empty
  const auto adj = detail::adjacency_masks(g);
  for (int size = 1; size < n; ++size) {
    const std::uint64_t limit = 1ULL << n;
    for (std::uint64_t mask = (1ULL << size) - 1; mask < limit;
         mask = detail::next_subset_same_size(mask)) {
      if (detail::cut_of_mask(adj, mask) < k) return size;
    }
  }
  return n;
}

// All U with c(U) < k and |U| = s_k(G); empty when G is k-connected.
inline std::vector<CutReport> minimal_small_cut_sets(
    const Graph& g, int k, int enumeration_bound = kEnumerationBound) {
  const int n = g.n();
  const int s = s_k_oracle(g, k, enumeration_bound);
  std::vector<CutReport> out;
  if (s == n) return out;
  const auto adj = detail::adjacency_masks(g);
  const std::uint64_t limit = 1ULL << n;
  for (std::uint64_t mask = (1ULL << s) - 1; mask < limit;
       mask = detail::next_subset_same_size(mask)) {
    const std::int64_t c = detail::cut_of_mask(adj, mask);
    if (c < k)
      out.push_back(CutReport{VertexSet::from_mask(mask, n), c, potential(n, s)});
  }
  return out;
}

// Induced subgraph on U, vertices relabeled 0..|U|-1 in sorted order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& u) {
  const auto& m = u.members();
  if (m.empty()) throw DomainError("induced_subgraph: empty set");
  std::vector<int> index(g.n(), -1);
  for (std::size_t i = 0; i < m.size(); ++i) index[m[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edges())
    if (index[a] != -1 && index[b] != -1)
      edges.emplace_back(index[a], index[b]);
  return Graph(static_cast<int>(m.size()), std::move(edges));
}

}  // namespace stochnet
