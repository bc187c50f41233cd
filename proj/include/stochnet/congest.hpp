#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochnet/graph.hpp"
#include "stochnet/rng.hpp"

#include <json.hpp>

namespace stochnet {

using NodeId = std::uint32_t;

// A message emitted an envelope over budget or to a non-neighbor; identifies
// the offending node and round. Always a hard error.
class ProtocolViolation : public std::runtime_error {
 public:
  ProtocolViolation(NodeId node, std::uint64_t round, const std::string& what)
      : std::runtime_error("protocol violation at node " + std::to_string(node) +
                           ", round " + std::to_string(round) + ": " + what),
        node(node),
        round(round) {}
  NodeId node;
  std::uint64_t round;
};

class IncompleteRunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bit string with explicit length; payloads are accounted in bits, not bytes.
class Bits {
 public:
  Bits() = default;

  void append(std::uint64_t value, int nbits) {
    for (int i = 0; i < nbits; ++i) push_bit(value >> i & 1);
  }

  std::size_t bit_size() const { return nbits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  friend bool operator==(const Bits&, const Bits&) = default;

  class Reader {
   public:
    explicit Reader(const Bits& bits) : bits_(&bits) {}
    std::uint64_t read(int nbits) {
      std::uint64_t v = 0;
      for (int i = 0; i < nbits; ++i) v |= static_cast<std::uint64_t>(bit(pos_++)) << i;
      return v;
    }

   private:
    int bit(std::size_t i) const {
      if (i >= bits_->nbits_) throw DomainError("Bits: read past end");
      return bits_->bytes_[i >> 3] >> (i & 7) & 1;
    }
    const Bits* bits_;
    std::size_t pos_ = 0;
  };

 private:
  void push_bit(std::uint64_t b) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    bytes_.back() |= static_cast<std::uint8_t>((b & 1) << (nbits_ % 8));
    ++nbits_;
  }
  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

struct Envelope {
  NodeId src = 0;
  NodeId dst = 0;
  Bits payload;
};

enum class Verdict { Undecided, Accept, Reject };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Undecided: return "undecided";
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
  }
  return "?";
}

// Parameters every node knows up front (standard CONGEST assumptions).
struct SharedConfig {
  int n = 0;
  int s = 0;
  int k = 0;
  std::uint64_t seed = 0;  // shared randomness root (e.g. edge weights)
};

// The synchronous per-node behavior contract: messages produced in round r
// are delivered at the start of round r+1.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(NodeId self, std::span<const NodeId> neighbors,
                    const SharedConfig& config, std::uint64_t private_seed) = 0;
  virtual std::vector<Envelope> on_round(std::uint64_t round,
                                         std::span<const Envelope> inbox) = 0;
  virtual Verdict verdict() const = 0;
};

struct SimConfig {
  std::uint64_t max_rounds = 0;
  int budget_bits = 0;  // 0: use 8*ceil(log2 n)
  std::uint64_t seed = 0;
  int s = 0;  // exposed to nodes via SharedConfig
  int k = 0;
  // Instrumentation: called after every simulated round (no effect on the
  // transcript). Used by tests to observe program state mid-run.
  std::function<void(std::uint64_t round)> round_observer;
};

inline int ceil_log2(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return std::max(b, 1);
}

inline int default_budget_bits(int n) { return 8 * ceil_log2(n); }

struct RunReport {
  std::map<NodeId, Verdict> verdicts;
  std::uint64_t rounds_used = 0;
  int max_message_bits = 0;
  std::uint64_t transcript_hash = 0;
  int budget_bits = 0;
  // Engine-internal: NodeId assigned to each graph vertex (seed-derived
  // permutation). Not part of the serialized report.
  std::vector<NodeId> vertex_ids;
};

inline nlohmann::json run_report_json(const RunReport& r) {
  nlohmann::json verdicts = nlohmann::json::object();
  for (const auto& [id, v] : r.verdicts) verdicts[std::to_string(id)] = to_string(v);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(r.transcript_hash));
  return nlohmann::json{{"verdicts", verdicts},
                        {"rounds_used", r.rounds_used},
                        {"max_message_bits", r.max_message_bits},
                        {"transcript_hash", std::string(hex)}};
}

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Run one synchronous simulation. `programs[v]` is the behavior of graph
// vertex v; NodeIds are a seed-derived random permutation of 0..n-1 so that
// program logic cannot silently depend on vertex order.
inline RunReport run(const Graph& g, std::span<NodeProgram* const> programs,
                     const SimConfig& config) {
  const int n = g.n();
  if (static_cast<int>(programs.size()) != n)
    throw DomainError("run: need one program per vertex");
  const int budget =
      config.budget_bits > 0 ? config.budget_bits : default_budget_bits(n);
  if (budget < ceil_log2(n)) throw DomainError("run: budget below ceil(log2 n)");

  // Seed-derived id permutation.
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  {
    SplitMix64 rng(derive_seed(config.seed, 0x1d5));
    for (int i = n - 1; i > 0; --i)
      std::swap(ids[i], ids[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
  }
  std::vector<int> vertex_of(n);
  for (int v = 0; v < n; ++v) vertex_of[ids[v]] = v;

  const auto adj = g.adjacency();
  std::vector<std::vector<NodeId>> neighbor_ids(n);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : adj[v]) neighbor_ids[v].push_back(ids[w]);
    std::sort(neighbor_ids[v].begin(), neighbor_ids[v].end());
  }

  SharedConfig shared;
  shared.n = n;
  shared.s = config.s;
  shared.k = config.k;
  shared.seed = config.seed;
  for (int v = 0; v < n; ++v)
    programs[v]->init(ids[v], neighbor_ids[v], shared,
                      derive_seed(config.seed, 0x9000 + ids[v]));

  RunReport report;
  report.budget_bits = budget;
  report.vertex_ids = ids;
  std::uint64_t hash = 0xcbf29ce484222325ULL;

  std::vector<std::vector<Envelope>> inbox(n);
  for (std::uint64_t round = 0; round < config.max_rounds; ++round) {
    std::vector<std::vector<Envelope>> next_inbox(n);
    bool all_decided = true;
    // Deterministic node order: by NodeId.
    for (NodeId id = 0; id < static_cast<NodeId>(n); ++id) {
      const int v = vertex_of[id];
      auto& in = inbox[v];
      std::sort(in.begin(), in.end(),
                [](const Envelope& a, const Envelope& b) { return a.src < b.src; });
      std::vector<Envelope> out = programs[v]->on_round(round, in);
      std::vector<NodeId> used;
      for (auto& env : out) {
        env.src = id;
        if (!std::binary_search(neighbor_ids[v].begin(), neighbor_ids[v].end(),
                                env.dst))
          throw ProtocolViolation(id, round, "message to non-neighbor " +
                                                 std::to_string(env.dst));
        if (std::find(used.begin(), used.end(), env.dst) != used.end())
          throw ProtocolViolation(id, round, "two envelopes on one edge");
        used.push_back(env.dst);
        const int bits = static_cast<int>(env.payload.bit_size());
        if (bits > budget)
          throw ProtocolViolation(id, round,
                                  "payload of " + std::to_string(bits) +
                                      " bits exceeds budget " + std::to_string(budget));
        report.max_message_bits = std::max(report.max_message_bits, bits);
        hash = detail::fnv1a(hash, round);
        hash = detail::fnv1a(hash, (static_cast<std::uint64_t>(env.src) << 32) | env.dst);
        hash = detail::fnv1a(hash, env.payload.bit_size());
        for (std::uint8_t byte : env.payload.bytes()) hash = detail::fnv1a(hash, byte);
        next_inbox[vertex_of[env.dst]].push_back(env);
      }
    }
    inbox = std::move(next_inbox);
    report.rounds_used = round + 1;
    if (config.round_observer) config.round_observer(round);
    for (int v = 0; v < n; ++v)
      if (programs[v]->verdict() == Verdict::Undecided) all_decided = false;
    if (all_decided) break;
  }

  report.transcript_hash = hash;
  for (int v = 0; v < n; ++v) report.verdicts[ids[v]] = programs[v]->verdict();
  return report;
}

// Convenience overload owning the programs.
inline RunReport run(const Graph& g,
                     const std::function<std::unique_ptr<NodeProgram>(int)>& factory,
                     const SimConfig& config) {
  std::vector<std::unique_ptr<NodeProgram>> owned;
  std::vector<NodeProgram*> raw;
  for (int v = 0; v < g.n(); ++v) {
    owned.push_back(factory(v));
    raw.push_back(owned.back().get());
  }
  return run(g, raw, config);
}

enum class TesterVerdict { AllAccept, SomeReject };

inline TesterVerdict tester_verdict(const RunReport& report) {
  bool reject = false;
  for (const auto& [id, v] : report.verdicts) {
    if (v == Verdict::Undecided)
      throw IncompleteRunError("node " + std::to_string(id) + " undecided");
    reject |= v == Verdict::Reject;
  }
  return reject ? TesterVerdict::SomeReject : TesterVerdict::AllAccept;
}

}  // namespace stochnet
