#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stochnet/augment.hpp"
#include "stochnet/graph.hpp"
#include "stochnet/oracles.hpp"
#include "stochnet/rng.hpp"

namespace stochnet {

enum class Family {
  kTwoCliques,
  kManyCliques,
  kPlantedWitness,
  kCirculantKconn,
  kErdosRenyi,
  kEdgeless,
};

inline std::string to_string(Family f) {
  switch (f) {
    case Family::kTwoCliques: return "two-cliques";
    case Family::kManyCliques: return "many-cliques";
    case Family::kPlantedWitness: return "planted-witness";
    case Family::kCirculantKconn: return "circulant-kconn";
    case Family::kErdosRenyi: return "erdos-renyi";
    case Family::kEdgeless: return "edgeless";
  }
  return "?";
}

inline std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::kTwoCliques, Family::kManyCliques, Family::kPlantedWitness,
                   Family::kCirculantKconn, Family::kErdosRenyi, Family::kEdgeless})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

struct InstanceSpec {
  Family family = Family::kEdgeless;
  int n = 0;
  std::vector<int> sizes;  // two-cliques / many-cliques component sizes
  int s = 0;               // planted-witness clique size
  int k = 0;               // planted-witness / circulant connectivity target
  double p = 0.0;          // erdos-renyi edge probability
  std::uint64_t seed = 0;  // erdos-renyi only

  std::string digest() const {
    std::ostringstream out;
    out << to_string(family) << ":n=" << n;
    switch (family) {
      case Family::kTwoCliques:
      case Family::kManyCliques:
        out << ":sizes=";
        for (std::size_t i = 0; i < sizes.size(); ++i)
          out << (i ? "+" : "") << sizes[i];
        break;
      case Family::kPlantedWitness:
        out << ":s=" << s << ":k=" << k;
        break;
      case Family::kCirculantKconn:
        out << ":k=" << k;
        break;
      case Family::kErdosRenyi: {
        out << ":p=";
        std::ostringstream pv;
        pv.precision(12);
        pv << p;
        out << pv.str() << ":seed=" << seed;
        break;
      }
      case Family::kEdgeless:
        break;
    }
    return out.str();
  }
};

namespace detail {

inline void add_clique(std::vector<Edge>& edges, int lo, int size) {
  for (int u = lo; u < lo + size; ++u)
    for (int v = u + 1; v < lo + size; ++v) edges.emplace_back(u, v);
}

// Harary graph H_{k,n} on vertices lo..lo+size-1: circulant with chord
// offsets 1..floor(k/2), plus diameters for odd k (requires even size).
// Edge connectivity is exactly k (the known Harary optimum).
inline void add_harary(std::vector<Edge>& edges, int lo, int size, int k) {
  if (k < 1 || k >= size)
    throw DomainError("harary: need 1 <= k < component size");
  if (k % 2 == 1 && size % 2 == 1)
    throw DomainError("harary: odd k needs an even component size");
  for (int off = 1; off <= k / 2; ++off)
    for (int i = 0; i < size; ++i)
      edges.push_back(make_edge(lo + i, lo + (i + off) % size));
  if (k == 1) {
    for (int i = 0; i + 1 < size; ++i) edges.emplace_back(lo + i, lo + i + 1);
  } else if (k % 2 == 1) {
    for (int i = 0; i < size / 2; ++i) edges.emplace_back(lo + i, lo + i + size / 2);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

inline void verify(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("generator self-check failed: " + what);
}

}  // namespace detail

// Disjoint cliques with the given component sizes (two-cliques and
// many-cliques differ only in arity). Components occupy consecutive
// vertex ranges in the order given.
inline Graph disjoint_cliques(int n, const std::vector<int>& sizes) {
  if (sizes.empty()) throw DomainError("disjoint_cliques: no component sizes");
  int total = 0;
  for (int sz : sizes) {
    if (sz < 1) throw DomainError("disjoint_cliques: component size must be >= 1");
    total += sz;
  }
  if (total != n) throw DomainError("disjoint_cliques: sizes must sum to n");
  std::vector<Edge> edges;
  int lo = 0;
  for (int sz : sizes) {
    detail::add_clique(edges, lo, sz);
    lo += sz;
  }
  return Graph(n, std::move(edges));
}

// Disjoint sparse components: each component of size >= 3 is a cycle, size 2
// a single edge, size 1 an isolated vertex. Unlike disjoint cliques, the
// non-edge pool stays ~n^2/2, which the stochastic-closeness comparisons
// rely on.
inline Graph disjoint_cycles(int n, const std::vector<int>& sizes) {
  if (sizes.empty()) throw DomainError("disjoint_cycles: no component sizes");
  int total = 0;
  for (int sz : sizes) {
    if (sz < 1) throw DomainError("disjoint_cycles: component size must be >= 1");
    total += sz;
  }
  if (total != n) throw DomainError("disjoint_cycles: sizes must sum to n");
  std::vector<Edge> edges;
  int lo = 0;
  for (int sz : sizes) {
    if (sz == 2) {
      edges.emplace_back(lo, lo + 1);
    } else if (sz >= 3) {
      for (int i = 0; i < sz; ++i) edges.push_back(make_edge(lo + i, lo + (i + 1) % sz));
    }
    std::sort(edges.begin(), edges.end());
    lo += sz;
  }
  return Graph(n, std::move(edges));
}

// k-edge-connected circulant (Harary) graph on n vertices.
inline Graph circulant_kconn(int n, int k) {
  std::vector<Edge> edges;
  detail::add_harary(edges, 0, n, k);
  return Graph(n, std::move(edges));
}

// A planted (s,k)-witness: vertices 0..s-1 form K_s, joined to a k-connected
// bulk (Harary graph on the remaining n-s vertices) by exactly k-1 edges.
// The clique is a witness: |W| = s and c(W) = k-1 < k.
inline Graph planted_witness(int n, int s, int k) {
  if (s < 1 || s >= n) throw DomainError("planted_witness: need 1 <= s < n");
  if (k < 1) throw DomainError("planted_witness: k must be >= 1");
  if (k - 1 >= s * (n - s))
    throw DomainError("planted_witness: need k-1 < s*(n-s) bridge slots");
  std::vector<Edge> edges;
  detail::add_clique(edges, 0, s);
  detail::add_harary(edges, s, n - s, k);  // throws if the bulk cannot be k-connected
  for (int i = 0; i < k - 1; ++i) edges.push_back(make_edge(i % s, s + i / s));
  return Graph(n, std::move(edges));
}

inline VertexSet planted_witness_set(int s) {
  std::vector<Vertex> m(s);
  std::iota(m.begin(), m.end(), 0);
  return VertexSet(std::move(m));
}

inline VertexSet bulk_set(int n, int s) {
  std::vector<Vertex> m(n - s);
  std::iota(m.begin(), m.end(), s);
  return VertexSet(std::move(m));
}

// G(n, p) with geometric skipping over the canonical non-edge order.
inline Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DomainError("erdos_renyi: p must be in [0,1]");
  SplitMix64 rng(seed);
  return Graph(n).with_edges(sample_edges(list_non_edges(Graph(n)), p, rng));
}

// Generate and immediately re-verify the family's structural guarantee with
// the exact oracles.
inline Graph generate(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::kTwoCliques:
    case Family::kManyCliques: {
      if (spec.family == Family::kTwoCliques && spec.sizes.size() != 2)
        throw DomainError("two-cliques: exactly two component sizes required");
      Graph g = disjoint_cliques(spec.n, spec.sizes);
      const auto parts = connected_components(g);
      detail::verify(parts.size() == spec.sizes.size(), "component count");
      std::vector<int> got;
      for (const auto& part : parts) got.push_back(static_cast<int>(part.size()));
      std::vector<int> want = spec.sizes;
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      detail::verify(got == want, "component sizes");
      return g;
    }
    case Family::kPlantedWitness: {
      Graph g = planted_witness(spec.n, spec.s, spec.k);
      const VertexSet w = planted_witness_set(spec.s);
      detail::verify(cut_size(g, w) == spec.k - 1, "planted cut size");
      detail::verify(is_k_connected(induced_subgraph(g, bulk_set(spec.n, spec.s)), spec.k),
                     "bulk k-connectivity");
      detail::verify(!is_k_connected(g, spec.k), "graph not k-connected");
      if (spec.n <= kEnumerationBound)
        detail::verify(s_k_oracle(g, spec.k) <= spec.s, "s_k within s");
      return g;
    }
    case Family::kCirculantKconn: {
      Graph g = circulant_kconn(spec.n, spec.k);
      detail::verify(edge_connectivity(g) == spec.k, "circulant edge connectivity");
      return g;
    }
    case Family::kErdosRenyi:
      return erdos_renyi(spec.n, spec.p, spec.seed);
    case Family::kEdgeless: {
      Graph g{spec.n};
      detail::verify(g.edge_count() == 0, "edgeless");
      return g;
    }
  }
  throw DomainError("generate: unknown family");
}

}  // namespace stochnet
