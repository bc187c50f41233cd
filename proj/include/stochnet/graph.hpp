#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stochnet {

// Thrown when an operation is called outside its mathematical domain
// (empty cut side, t > |non-edges|, malformed input, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an exact oracle is asked for an instance larger than its
// enumeration bound.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // canonical: first < second

inline Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw DomainError("self-loop (" + std::to_string(u) + ")");
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Simple undirected graph over vertex ids 0..n-1. Edges are kept sorted in
// canonical (u < v) order so that serialization and iteration are
// deterministic and equality is structural.
class Graph {
 public:
  explicit Graph(int n) : n_(n) {
    if (n < 1) throw DomainError("graph needs at least one vertex");
  }

  Graph(int n, std::vector<Edge> edges) : Graph(n) {
    std::sort(edges.begin(), edges.end());
    for (const auto& [u, v] : edges) {
      if (u < 0 || v >= n_ || u >= v)
        throw DomainError("edge out of range or not canonical");
    }
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw DomainError("duplicate edge");
    edges_ = std::move(edges);
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  std::int64_t max_edges() const {
    return static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
  }
  std::int64_t non_edge_count() const { return max_edges() - edge_count(); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u == v) return false;
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
  }

  // Neighbor lists, sorted ascending.
  std::vector<std::vector<Vertex>> adjacency() const {
    std::vector<std::vector<Vertex>> adj(n_);
    for (const auto& [u, v] : edges_) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  // Graph with the same vertex set and edges = union with `extra`.
  Graph with_edges(std::vector<Edge> extra) const {
    std::sort(extra.begin(), extra.end());
    std::vector<Edge> merged(edges_.size() + extra.size());
    std::merge(edges_.begin(), edges_.end(), extra.begin(), extra.end(),
               merged.begin());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return Graph(n_, std::move(merged));
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
};

// Subset of 0..n-1, kept as a sorted vector for deterministic iteration.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static VertexSet from_mask(std::uint64_t mask, int n) {
    std::vector<Vertex> m;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) m.push_back(v);
    return VertexSet(std::move(m));
  }

  const std::vector<Vertex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

// --- text format -----------------------------------------------------------
//
// First line "n m", then m lines "u v" with u < v, ASCII decimal, LF.

inline Graph read_graph(std::istream& in) {
  std::int64_t n = 0, m = 0;
  if (!(in >> n >> m)) throw DomainError("graph header: expected 'n m'");
  if (n < 1) throw DomainError("graph header: n must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    Vertex u, v;
    if (!(in >> u >> v)) throw DomainError("graph body: truncated edge list");
    if (u >= v) throw DomainError("graph body: edges must satisfy u < v");
    edges.emplace_back(u, v);
  }
  return Graph(static_cast<int>(n), std::move(edges));  // range/dup checks
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace stochnet
