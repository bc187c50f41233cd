#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stochnet/graph.hpp"
#include "stochnet/oracles.hpp"
#include "stochnet/rng.hpp"

namespace stochnet {

// All "log n" in the probability formulas of this module are natural logs.

struct AugmentParams {
  double t = 0.0;  // expected number of added edges
  std::uint64_t seed = 0;

  double per_edge_prob(const Graph& g) const {
    const double bar = static_cast<double>(g.non_edge_count());
    if (t < 0.0 || t > bar)
      throw DomainError("AugmentParams: t must lie in [0, |non-edges|]");
    return bar == 0.0 ? 0.0 : t / bar;
  }
};

struct TrialStats {
  std::string family;
  int n = 0;
  int k = 0;
  int s = 0;
  double t = 0.0;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  std::uint64_t seed = 0;

  double failure_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
  }

  // Wilson score interval, 95% upper bound.
  double wilson_upper95() const {
    if (trials == 0) return 1.0;
    const double z = 1.959963984540054;
    const double nt = static_cast<double>(trials);
    const double p = failure_rate();
    const double z2 = z * z;
    const double center = p + z2 / (2.0 * nt);
    const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
    return (center + half) / (1.0 + z2 / nt);
  }
};

// CSV row: family,n,k,s,t,trials,failures,failure_rate,wilson_upper95,seed
inline std::string trial_stats_csv_header() {
  return "family,n,k,s,t,trials,failures,failure_rate,wilson_upper95,seed";
}

inline void format_double(std::ostream& out, double v) {
  std::ostringstream tmp;
  tmp.precision(12);
  tmp << v;
  out << tmp.str();
}

inline std::string trial_stats_csv_row(const TrialStats& st) {
  std::ostringstream out;
  out << st.family << ',' << st.n << ',' << st.k << ',' << st.s << ',';
  format_double(out, st.t);
  out << ',' << st.trials << ',' << st.failures << ',';
  format_double(out, st.failure_rate());
  out << ',';
  format_double(out, st.wilson_upper95());
  out << ',' << st.seed;
  return out.str();
}

// Non-edges of g in canonical order.
inline std::vector<Edge> list_non_edges(const Graph& g) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(g.non_edge_count()));
  auto it = g.edges().begin();
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v = u + 1; v < g.n(); ++v) {
      if (it != g.edges().end() && *it == Edge{u, v})
        ++it;
      else
        out.emplace_back(u, v);
    }
  }
  return out;
}

// Independent Bernoulli(p) selection from `pool`, implemented with geometric
// skipping so the cost is O(#selected) rather than O(|pool|).
inline std::vector<Edge> sample_edges(const std::vector<Edge>& pool, double p,
                                      SplitMix64& rng) {
  std::vector<Edge> picked;
  if (p <= 0.0 || pool.empty()) return picked;
  if (p >= 1.0) return pool;
  const double log1mp = std::log1p(-p);
  const std::int64_t size = static_cast<std::int64_t>(pool.size());
  std::int64_t pos = -1;
  while (true) {
    const std::int64_t skip =
        static_cast<std::int64_t>(std::floor(std::log1p(-rng.next_unit()) / log1mp));
    pos += 1 + skip;
    if (pos >= size || pos < 0) break;
    picked.push_back(pool[static_cast<std::size_t>(pos)]);
  }
  return picked;
}

// Add(G,t): each non-edge independently with probability t/|non-edges|.
inline Graph random_addition(const Graph& g, const AugmentParams& params) {
  const double p = params.per_edge_prob(g);
  if (p <= 0.0) return g;
  SplitMix64 rng(params.seed);
  return g.with_edges(sample_edges(list_non_edges(g), p, rng));
}

inline Graph random_addition(const Graph& g, double t, std::uint64_t seed) {
  return random_addition(g, AugmentParams{t, seed});
}

namespace detail {

// Run `trials` independent trials of `trial` (returns true on failure) and
// count failures. Each trial owns its derived seed, so the count is
// independent of the thread partition.
inline std::int64_t count_failures(std::int64_t trials, std::uint64_t seed,
                                   const std::function<bool(std::uint64_t)>& trial,
                                   int threads = 0) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    threads = std::min(threads, 8);
  }
  threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(trials, 1)));
  std::vector<std::int64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      std::int64_t local = 0;
      for (std::int64_t i = w; i < trials; i += threads)
        local += trial(derive_seed(seed, static_cast<std::uint64_t>(i)));
      partial[w] = local;
    });
  }
  for (auto& th : pool) th.join();
  std::int64_t total = 0;
  for (auto f : partial) total += f;
  return total;
}

}  // namespace detail

// Empirical Pr[Add(G,t) not k-connected]. For k = 1 only the contraction of
// the base components matters, so each trial is union-find over the sampled
// additions; for k >= 2 the full augmented graph is checked.
inline TrialStats estimate_failure(const Graph& g, int k, double t,
                                   std::int64_t trials, std::uint64_t seed,
                                   int threads = 0) {
  if (trials < 1) throw DomainError("estimate_failure: trials must be >= 1");
  TrialStats st;
  st.n = g.n();
  st.k = k;
  st.t = t;
  st.trials = trials;
  st.seed = seed;

  const std::vector<Edge> pool = list_non_edges(g);
  const double p = AugmentParams{t, seed}.per_edge_prob(g);

  std::function<bool(std::uint64_t)> trial;
  if (k == 1) {
    const auto parts = connected_components(g);
    std::vector<int> comp(g.n(), 0);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (Vertex v : parts[i].members()) comp[v] = static_cast<int>(i);
    const int num_comps = static_cast<int>(parts.size());
    trial = [&g, &pool, comp, num_comps, p](std::uint64_t sub) {
      if (num_comps == 1) return false;
      SplitMix64 rng(sub);
      std::vector<int> parent(num_comps);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      int remaining = num_comps;
      for (const auto& [u, v] : sample_edges(pool, p, rng)) {
        int a = find(comp[u]), b = find(comp[v]);
        if (a != b) {
          parent[a] = b;
          --remaining;
        }
      }
      return remaining > 1;
    };
  } else {
    trial = [&g, &pool, p, k](std::uint64_t sub) {
      SplitMix64 rng(sub);
      return !is_k_connected(g.with_edges(sample_edges(pool, p, rng)), k);
    };
  }
  st.failures = detail::count_failures(trials, seed, trial, threads);
  return st;
}

// Smallest t on a geometric grid whose estimated failure rate is at or below
// `target_failure`. Relies on failure probability being non-increasing in t
// (monotone property coupling). Returns |non-edges| when the grid runs out.
inline double threshold_search(const Graph& g, int k, double target_failure,
                               std::int64_t trials, std::uint64_t seed,
                               double grid_ratio = 1.25, int threads = 0) {
  if (target_failure <= 0.0 || target_failure >= 1.0)
    throw DomainError("threshold_search: target_failure must be in (0,1)");
  if (is_k_connected(g, k))
    throw DomainError("threshold_search: G already k-connected");
  const double t_max = static_cast<double>(g.non_edge_count());
  std::uint64_t step = 0;
  for (double t = 1.0; t < t_max; t *= grid_ratio, ++step) {
    const auto st = estimate_failure(g, k, t, trials, derive_seed(seed, step), threads);
    if (st.failure_rate() <= target_failure) return t;
  }
  return t_max;
}

enum class ProcessTag { kIterativeAdaptive, kIterativeFixed, kOneShot };  // A, B, C

struct ProcessVariant {
  ProcessTag tag = ProcessTag::kOneShot;
  double c_const = 2.0;  // the w.h.p. exponent constant; must exceed 1
};

// The k-step augmentation processes behind Theorem-style one-shot addition:
//   A: adaptive p_i = 4(c+3) ln n / (s_i(G_cur) * n), one level at a time
//   B: fixed    p' = 4(c+3) ln n / (s_k(G) * n), k-r iterations
//   C: one-shot p = p' * k
// Probabilities are capped at 1.
inline Graph iterative_process(const Graph& g, int k, const ProcessVariant& variant,
                               std::uint64_t seed,
                               int enumeration_bound = kEnumerationBound) {
  if (variant.c_const <= 1.0) throw DomainError("iterative_process: c_const must exceed 1");
  if (g.n() < 4 * k) throw DomainError("iterative_process: requires n >= 4k");
  const int n = g.n();
  const double logn = std::log(static_cast<double>(n));
  const double cc = variant.c_const + 3.0;

  int r = 0;  // current connectivity level
  for (int level = k; level >= 1; --level) {
    if (is_k_connected(g, level)) {
      r = level;
      break;
    }
  }
  if (r >= k) return g;

  auto add_with_prob = [&](const Graph& cur, double p, std::uint64_t sub) {
    p = std::min(p, 1.0);
    const double t = p * static_cast<double>(cur.non_edge_count());
    return random_addition(cur, t, sub);
  };

  switch (variant.tag) {
    case ProcessTag::kIterativeAdaptive: {
      Graph cur = g;
      for (int i = r + 1; i <= k; ++i) {
        const int si = s_k_oracle(cur, i, enumeration_bound);  // may throw CapacityError
        const double p = 4.0 * cc * logn / (static_cast<double>(si) * n);
        cur = add_with_prob(cur, p, derive_seed(seed, static_cast<std::uint64_t>(i)));
      }
      return cur;
    }
    case ProcessTag::kIterativeFixed: {
      const int sk = s_k_oracle(g, k, enumeration_bound);
      const double p = 4.0 * cc * logn / (static_cast<double>(sk) * n);
      Graph cur = g;
      for (int i = r + 1; i <= k; ++i)
        cur = add_with_prob(cur, p, derive_seed(seed, static_cast<std::uint64_t>(i)));
      return cur;
    }
    case ProcessTag::kOneShot: {
      const int sk = s_k_oracle(g, k, enumeration_bound);
      const double p = 4.0 * cc * static_cast<double>(k) * logn /
                       (static_cast<double>(sk) * n);
      return add_with_prob(g, p, seed);
    }
  }
  throw DomainError("iterative_process: unknown variant");
}

// Union of m independent Add(G,t) samples.
inline Graph repeated_union(const Graph& g, double t, int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("repeated_union: m must be >= 1");
  if (static_cast<double>(m) * t > static_cast<double>(g.non_edge_count()))
    throw DomainError("repeated_union: m*t exceeds |non-edges|");
  Graph out = g;
  for (int i = 0; i < m; ++i) {
    Graph sample = random_addition(g, t, derive_seed(seed, static_cast<std::uint64_t>(i)));
    out = out.with_edges(sample.edges());
  }
  return out;
}

}  // namespace stochnet
