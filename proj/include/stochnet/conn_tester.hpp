#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "stochnet/congest.hpp"
#include "stochnet/graph.hpp"
#include "stochnet/oracles.hpp"

namespace stochnet {

// Round budget of the DFS tester: token moves, ownership updates, backtracks
// and the final boundary-check walk each cost one round per visited node.
inline std::uint64_t conn_tester_max_rounds(int s) {
  return 4 * static_cast<std::uint64_t>(s) + 8;
}

// Distributed DFS connectivity tester. Every node roots a DFS execution
// identified by its id; a token arriving at a node owned by a higher root
// dies silently, arriving at a lower-owned node takes ownership. An
// execution that has visited s nodes walks back to its root checking for an
// edge to a node it has not visited: found -> accept, none -> reject. An
// execution that exhausts its component first accepts iff it saw all n
// nodes. Nodes not involved in any decision accept when the round budget
// runs out.
class ConnDfsProgram final : public NodeProgram {
 public:
  void init(NodeId self, std::span<const NodeId> neighbors,
            const SharedConfig& config, std::uint64_t) override {
    self_ = self;
    neighbors_.assign(neighbors.begin(), neighbors.end());
    n_ = config.n;
    s_ = config.s;
    if (s_ < 1 || s_ > n_) throw DomainError("conn tester: need 1 <= s <= n");
    id_bits_ = ceil_log2(n_);
    deadline_ = conn_tester_max_rounds(s_) - 1;
  }

  std::vector<Envelope> on_round(std::uint64_t round,
                                 std::span<const Envelope> inbox) override {
    std::vector<Envelope> out;
    bool newly_visited = false;
    std::optional<Msg> token;  // backtrack or check addressed to the owner

    if (round == 0) {
      owner_ = self_;
      parent_.reset();
      count_ = 1;
      newly_visited = true;
    }

    for (const auto& env : inbox) {
      Msg m = decode(env);
      marks_[env.src].insert(m.root);  // any message implies its sender is visited
      if (m.type == Type::kForward && m.root > owner_) {
        owner_ = m.root;
        parent_ = env.src;
        count_ = m.count + 1;
        newly_visited = true;
      }
    }
    for (const auto& env : inbox) {
      Msg m = decode(env);
      if ((m.type == Type::kBacktrack || m.type == Type::kCheck) && m.root == owner_)
        token = m;
    }

    if (newly_visited) {
      act(out);
      // Announce the visit on every edge not already carrying a token message.
      for (NodeId w : neighbors_) {
        bool taken = false;
        for (const auto& e : out) taken |= e.dst == w;
        if (!taken) out.push_back(encode(w, {Type::kVisited, owner_, 0}));
      }
    } else if (token) {
      if (token->type == Type::kBacktrack) {
        count_ = token->count;
        act(out);
      } else {
        run_check(out);
      }
    }

    if (round >= deadline_ && verdict_ == Verdict::Undecided)
      verdict_ = Verdict::Accept;
    return out;
  }

  Verdict verdict() const override { return verdict_; }

 private:
  enum class Type : std::uint8_t { kVisited, kForward, kBacktrack, kCheck };
  struct Msg {
    Type type;
    NodeId root;
    int count;  // visit count of the execution, forward/backtrack only
  };

  // Token is at this node: continue the DFS of execution `owner_`.
  void act(std::vector<Envelope>& out) {
    if (count_ == s_) {
      if (s_ == n_) {
        decide(Verdict::Accept);
      } else {
        run_check(out);
      }
      return;
    }
    if (auto next = unvisited_neighbor()) {
      out.push_back(encode(*next, {Type::kForward, owner_, count_}));
      return;
    }
    if (!parent_ || owner_ == self_) {
      // Component exhausted below s: connected only if everything was seen.
      decide(count_ == n_ ? Verdict::Accept : Verdict::Reject);
      return;
    }
    out.push_back(encode(*parent_, {Type::kBacktrack, owner_, count_}));
  }

  // Boundary-check walk: look for an edge out of the visited set.
  void run_check(std::vector<Envelope>& out) {
    if (unvisited_neighbor()) {
      decide(Verdict::Accept);
      return;
    }
    if (!parent_ || owner_ == self_) {
      decide(Verdict::Reject);
      return;
    }
    out.push_back(encode(*parent_, {Type::kCheck, owner_, 0}));
  }

  std::optional<NodeId> unvisited_neighbor() const {
    for (NodeId w : neighbors_) {
      auto it = marks_.find(w);
      if (it == marks_.end() || !it->second.contains(owner_)) return w;
    }
    return std::nullopt;
  }

  void decide(Verdict v) {
    if (verdict_ != Verdict::Reject) verdict_ = v;
  }

  Envelope encode(NodeId dst, const Msg& m) const {
    Envelope env;
    env.dst = dst;
    env.payload.append(static_cast<std::uint64_t>(m.type), 2);
    env.payload.append(m.root, id_bits_);
    if (m.type == Type::kForward || m.type == Type::kBacktrack)
      env.payload.append(static_cast<std::uint64_t>(m.count - 1), id_bits_);
    return env;
  }

  Msg decode(const Envelope& env) const {
    Bits::Reader r(env.payload);
    Msg m{};
    m.type = static_cast<Type>(r.read(2));
    m.root = static_cast<NodeId>(r.read(id_bits_));
    if (m.type == Type::kForward || m.type == Type::kBacktrack)
      m.count = static_cast<int>(r.read(id_bits_)) + 1;
    return m;
  }

  NodeId self_ = 0;
  std::vector<NodeId> neighbors_;
  int n_ = 0, s_ = 0, id_bits_ = 0;
  std::uint64_t deadline_ = 0;

  NodeId owner_ = 0;
  std::optional<NodeId> parent_;
  int count_ = 0;
  std::map<NodeId, std::set<NodeId>> marks_;  // neighbor -> roots that visited it
  Verdict verdict_ = Verdict::Undecided;
};

// Exact decision the distributed program realizes: reject iff some connected
// component has at most s vertices and the graph is disconnected.
inline TesterVerdict conn_semantic_oracle(const Graph& g, int s) {
  for (const auto& part : connected_components(g)) {
    if (static_cast<int>(part.size()) <= s && static_cast<int>(part.size()) < g.n())
      return TesterVerdict::SomeReject;
  }
  return TesterVerdict::AllAccept;
}

// Run the DFS tester on g with size parameter s.
inline RunReport run_conn_test(const Graph& g, int s, std::uint64_t seed,
                               int budget_bits = 0) {
  SimConfig config;
  config.max_rounds = conn_tester_max_rounds(s);
  config.budget_bits = budget_bits;
  config.seed = seed;
  config.s = s;
  return run(g, [](int) { return std::make_unique<ConnDfsProgram>(); }, config);
}

}  // namespace stochnet
