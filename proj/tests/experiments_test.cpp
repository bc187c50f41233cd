#include "stochnet/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace stochnet {
namespace {

const ExperimentRow* find_row(const std::vector<ExperimentRow>& rows,
                              const std::string& tag, int n = 0, int s = 0,
                              double t = -1.0) {
  for (const auto& r : rows) {
    if (r.tag != tag) continue;
    if (n && r.n != n) continue;
    if (s && r.s != s) continue;
    if (t >= 0.0 && std::abs(r.t - t) > 1e-9) continue;
    return &r;
  }
  return nullptr;
}

TEST(Csv, HeaderAndFieldOrder) {
  ExperimentRow row;
  row.tag = "x";
  row.digest = "d";
  row.n = 10;
  row.s = 2;
  row.k = 1;
  row.t = 1.5;
  row.trials = 100;
  row.failure_rate = 0.25;
  row.seed = 9;
  EXPECT_EQ(experiment_csv_header(),
            "experiment,digest,n,s,k,t,trials,failure_rate,threshold,rounds,frequency,"
            "hamming,seed");
  EXPECT_EQ(experiment_csv_row(row), "x,d,10,2,1,1.5,100,0.25,,,,,9");
  const std::string csv = experiment_csv({row});
  EXPECT_EQ(csv, experiment_csv_header() + "\nx,d,10,2,1,1.5,100,0.25,,,,,9\n");
}

TEST(G1VsG2, OrderedFailureRatesAndEqualHamming) {
  const int n = 100;
  const std::int64_t trials = 5000;
  const auto rows = experiment_g1_vs_g2(n, trials, 7);
  ASSERT_EQ(rows.size(), 6u);
  const double t_mid = std::ceil(4.0 * std::log(n));
  const auto* g1 = find_row(rows, "g1g2-g1", n, 0, t_mid);
  const auto* g2 = find_row(rows, "g1g2-g2", n, 0, t_mid);
  ASSERT_TRUE(g1 && g2);
  EXPECT_DOUBLE_EQ(*g1->hamming, 1.0);
  EXPECT_DOUBLE_EQ(*g2->hamming, 1.0);
  const double sigma = std::sqrt(0.25 / trials);
  EXPECT_LT(*g2->failure_rate + 3.0 * sigma, *g1->failure_rate);
  // The heavy-t rows connect essentially always.
  const double t_big = std::ceil(n * std::log(n) / 8.0);
  EXPECT_LE(*find_row(rows, "g1g2-g1", n, 0, t_big)->failure_rate, 0.05);
}

TEST(G1VsG2, Validation) {
  EXPECT_THROW(experiment_g1_vs_g2(15, 100, 1), DomainError);
  EXPECT_THROW(experiment_g1_vs_g2(17, 100, 1), DomainError);
}

TEST(Lemma31Scaling, ThresholdBandAndTightness) {
  const auto rows = experiment_lemma31_scaling({50, 100}, {2, 5}, 4000, 11);
  ASSERT_EQ(rows.size(), 8u);
  for (int n : {50, 100}) {
    for (int s : {2, 5}) {
      const auto* thr = find_row(rows, "lemma31-threshold", n, s);
      ASSERT_TRUE(thr);
      ASSERT_TRUE(thr->threshold.has_value());
      const double normalized = *thr->threshold * s / (n * std::log(n));
      EXPECT_GE(normalized, 0.1) << "n=" << n << " s=" << s;
      EXPECT_LE(normalized, 3.0) << "n=" << n << " s=" << s;
      EXPECT_GE(*thr->threshold, 1.0);  // disconnected needs at least one edge
      const auto* tight = find_row(rows, "lemma31-tightness", n, s);
      ASSERT_TRUE(tight);
      const double sigma = std::sqrt(0.25 / 4000.0);
      EXPECT_GE(*tight->failure_rate, 1.0 / n - 3.0 * sigma);
    }
  }
  // Doubling s halves the threshold within grid slack.
  const auto* s2 = find_row(rows, "lemma31-threshold", 100, 2);
  const auto* s5 = find_row(rows, "lemma31-threshold", 100, 5);
  const double ratio = *s5->threshold / *s2->threshold;  // expect ~2/5
  EXPECT_GE(ratio, 0.4 / 1.6);
  EXPECT_LE(ratio, 0.4 * 1.6);
}

TEST(RoundCounts, ExponentsInBand) {
  const auto rows = experiment_round_counts(3);
  std::vector<std::pair<int, std::uint64_t>> conn, kconn;
  for (const auto& r : rows) {
    if (r.tag == "rounds-conn" && r.s > 1) conn.push_back({r.s, *r.rounds});
    if (r.tag == "rounds-kconn-rep") kconn.push_back({r.s, *r.rounds});
  }
  ASSERT_EQ(conn.size(), 4u);
  ASSERT_EQ(kconn.size(), 3u);
  const double conn_exp = fitted_exponent(conn);
  EXPECT_GE(conn_exp, 0.8);
  EXPECT_LE(conn_exp, 1.2);
  const double kconn_exp = fitted_exponent(kconn);
  EXPECT_GE(kconn_exp, 1.6);
  EXPECT_LE(kconn_exp, 2.4);
  // Consecutive conn ratios linear-ish; s=1 row bounded by a constant.
  for (std::size_t i = 0; i + 1 < conn.size(); ++i) {
    const double ratio = static_cast<double>(conn[i + 1].second) / conn[i].second;
    EXPECT_GE(ratio, 1.5);
    EXPECT_LE(ratio, 2.5);
  }
  const auto* s1 = find_row(rows, "rounds-conn", 0, 1);
  ASSERT_TRUE(s1);
  EXPECT_LE(*s1->rounds, 12u);
  // kconn per-rep s=8 vs s=4 ratio.
  const double kr = static_cast<double>(kconn[2].second) / kconn[1].second;
  EXPECT_GE(kr, 3.0);
  EXPECT_LE(kr, 5.0);
}

TEST(Appendix, InequalitiesAtReducedScale) {
  const std::int64_t trials = 5000;
  const auto rows = experiment_appendix(16, trials, 21);
  ASSERT_EQ(rows.size(), 3u);
  const double f1 = *find_row(rows, "appendix-single")->failure_rate;
  const double f2 = *find_row(rows, "appendix-union2")->failure_rate;
  const double f3 = *find_row(rows, "appendix-double")->failure_rate;
  const double sigma = std::sqrt(0.25 / trials);
  EXPECT_NEAR(f1, 0.2, 0.1);  // tuning worked
  EXPECT_LE(f2, f1 * f1 + 3.0 * sigma);
  EXPECT_LE(f3, f2 + 3.0 * sigma);
}

TEST(Lemma51Experiment, RowsMatchDirectCalls) {
  const auto rows = experiment_lemma51(5000, 13);
  ASSERT_EQ(rows.size(), 2u);
  const double planted = *find_row(rows, "lemma51-planted")->frequency;
  const double two_path = *find_row(rows, "lemma51-2path")->frequency;
  EXPECT_GE(planted, 0.25 * std::pow(4.0, -2.0 * (1.0 - 1.0 / 3.0)));
  EXPECT_NEAR(two_path, 0.5, 3.0 * std::sqrt(0.25 / 5000.0));
}

TEST(Reproducibility, IdenticalCsvBytes) {
  EXPECT_EQ(experiment_csv(experiment_g1_vs_g2(16, 400, 5)),
            experiment_csv(experiment_g1_vs_g2(16, 400, 5)));
  EXPECT_EQ(experiment_csv(experiment_round_counts(8)),
            experiment_csv(experiment_round_counts(8)));
  EXPECT_EQ(experiment_csv(experiment_lemma51(300, 2)),
            experiment_csv(experiment_lemma51(300, 2)));
}

}  // namespace
}  // namespace stochnet
