#include "stochnet/conn_tester.hpp"

#include <gtest/gtest.h>

#include "graph_corpus.hpp"
#include "stochnet/generators.hpp"
#include "test_util.hpp"

namespace stochnet {
namespace {

using testutil::cycle_graph;
using testutil::random_structured_graph;

TEST(ConnSemanticOracle, KnownCases) {
  EXPECT_EQ(conn_semantic_oracle(cycle_graph(10), 4), TesterVerdict::AllAccept);
  EXPECT_EQ(conn_semantic_oracle(disjoint_cliques(20, {3, 17}), 3),
            TesterVerdict::SomeReject);
  EXPECT_EQ(conn_semantic_oracle(disjoint_cliques(20, {10, 10}), 3),
            TesterVerdict::AllAccept);
}

TEST(ConnTester, ConnectedCycleAccepts) {
  const RunReport report = run_conn_test(cycle_graph(20), 5, 11);
  EXPECT_EQ(tester_verdict(report), TesterVerdict::AllAccept);
  EXPECT_LE(report.rounds_used, conn_tester_max_rounds(5));
}

TEST(ConnTester, SmallComponentRejects) {
  // Two K_3 components plus a K_14: the size-3 component is below s = 5.
  const Graph g = disjoint_cliques(20, {3, 3, 14});
  const RunReport report = run_conn_test(g, 5, 12);
  EXPECT_EQ(tester_verdict(report), TesterVerdict::SomeReject);
}

TEST(ConnTester, FullTraversalBoundaryCase) {
  const Graph g = cycle_graph(12);
  EXPECT_EQ(tester_verdict(run_conn_test(g, 12, 13)), TesterVerdict::AllAccept);
  const Graph split = disjoint_cliques(12, {6, 6});
  EXPECT_EQ(tester_verdict(run_conn_test(split, 12, 13)), TesterVerdict::SomeReject);
}

TEST(ConnTester, MatchesOracleOnRandomCorpus) {
  SplitMix64 rng(404);
  int runs = 0;
  while (runs < 150) {
    const int n = 2 + static_cast<int>(rng.next_below(39));  // n <= 40
    const Graph g = random_structured_graph(n, rng.next());
    for (int s : {1, 2, std::max(1, n / 4), n - 1, n}) {
      if (s < 1 || s > n) continue;
      const RunReport report = run_conn_test(g, s, rng.next());
      EXPECT_EQ(tester_verdict(report), conn_semantic_oracle(g, s))
          << "n=" << n << " s=" << s << " run=" << runs;
      EXPECT_LE(report.rounds_used, conn_tester_max_rounds(s));
      EXPECT_LE(report.max_message_bits, default_budget_bits(n));
      ++runs;
    }
  }
}

TEST(ConnTester, ExhaustiveOnSmallGraphs) {
  // All non-isomorphic graphs with n <= 6, every s: verdict equals the
  // oracle; connected graphs always accept (Theorem 1.1 YES side), and every
  // rejection is certified by a small component.
  for (int n = 2; n <= 6; ++n) {
    for (std::uint32_t mask : testutil::nonisomorphic_masks(n)) {
      const Graph g = testutil::graph_from_mask(n, mask);
      for (int s = 1; s <= n; ++s) {
        const RunReport report = run_conn_test(g, s, 77 + mask);
        const TesterVerdict verdict = tester_verdict(report);
        EXPECT_EQ(verdict, conn_semantic_oracle(g, s)) << "n=" << n << " s=" << s;
        if (is_connected(g)) EXPECT_EQ(verdict, TesterVerdict::AllAccept);
        if (verdict == TesterVerdict::SomeReject) {
          bool small = false;
          for (const auto& part : connected_components(g))
            small |= static_cast<int>(part.size()) <= s;
          EXPECT_TRUE(small);
        }
        EXPECT_LE(report.rounds_used, conn_tester_max_rounds(s));
      }
    }
  }
}

TEST(ConnTester, VerdictInvariantUnderIdPermutation) {
  const Graph g = disjoint_cliques(15, {4, 11});
  for (int s : {3, 4, 10}) {
    const TesterVerdict expect = conn_semantic_oracle(g, s);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      EXPECT_EQ(tester_verdict(run_conn_test(g, s, seed)), expect) << "seed=" << seed;
  }
}

TEST(ConnTester, TranscriptIsReproducible) {
  const Graph g = disjoint_cliques(18, {5, 13});
  const RunReport a = run_conn_test(g, 6, 31337);
  const RunReport b = run_conn_test(g, 6, 31337);
  EXPECT_EQ(a.transcript_hash, b.transcript_hash);
  EXPECT_EQ(a.rounds_used, b.rounds_used);
}

TEST(ConnTester, RejectsInvalidS) {
  SimConfig config;
  config.max_rounds = 4;
  config.seed = 1;
  config.s = 0;
  EXPECT_THROW(
      run(cycle_graph(4), [](int) { return std::make_unique<ConnDfsProgram>(); }, config),
      DomainError);
}

}  // namespace
}  // namespace stochnet
