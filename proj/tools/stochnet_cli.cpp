// Command-line front end: instance generation, the two distributed testers,
// Monte-Carlo failure estimation, threshold search, and the experiment
// drivers. All stochastic subcommands require an explicit --seed; reruns
// with the same arguments produce byte-identical output files.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stochnet/augment.hpp"
#include "stochnet/conn_tester.hpp"
#include "stochnet/experiments.hpp"
#include "stochnet/generators.hpp"
#include "stochnet/graph.hpp"
#include "stochnet/kconn_tester.hpp"
#include "stochnet/oracles.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitUsage = 64;

stochnet::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw stochnet::DomainError("cannot open graph file: " + path);
  return stochnet::read_graph(in);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw stochnet::DomainError("cannot open output file: " + path);
  out << content;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

// Every run logs its fully resolved configuration (including seeds) to
// stderr so the invocation is reconstructible from logs alone.
void log_config(const std::string& cmd, const std::vector<std::string>& kv) {
  std::cerr << "[config] " << cmd;
  for (const auto& item : kv) std::cerr << ' ' << item;
  std::cerr << '\n';
}

std::string kv(const std::string& key, const std::string& value) {
  return key + "=" + value;
}

template <typename T>
std::string kv(const std::string& key, T value) {
  return key + "=" + std::to_string(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochnet: stochastic-distance connectivity testing toolkit"};
  app.require_subcommand(1);

  int threads = 0;  // 0: library default (min(hardware, 8))
  app.add_option("--threads", threads, "worker threads for Monte-Carlo trials (0 = auto)");

  // --- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_family, gen_sizes, gen_out;
  int gen_n = 0, gen_s = 0, gen_k = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 0;
  bool gen_has_seed = false;
  gen->add_option("--family", gen_family, "instance family")->required();
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--sizes", gen_sizes, "comma-separated component sizes");
  gen->add_option("--s", gen_s, "planted witness size");
  gen->add_option("--k", gen_k, "connectivity target");
  gen->add_option("--p", gen_p, "erdos-renyi edge probability");
  gen->add_option("--seed", gen_seed, "master seed")->each([&](const std::string&) {
    gen_has_seed = true;
  });
  gen->add_option("--out", gen_out, "output graph file (default: stdout)");

  // --- tester-conn -------------------------------------------------------
  auto* tconn = app.add_subcommand("tester-conn", "run the distributed connectivity tester");
  std::string tconn_graph, tconn_out;
  int tconn_s = 0;
  std::uint64_t tconn_seed = 0;
  tconn->add_option("--graph", tconn_graph, "input graph file")->required();
  tconn->add_option("--s", tconn_s, "component size threshold")->required();
  tconn->add_option("--seed", tconn_seed, "master seed")->required();
  tconn->add_option("--out", tconn_out, "output JSON file (default: stdout)");

  // --- tester-kconn ------------------------------------------------------
  auto* tkconn = app.add_subcommand("tester-kconn", "run the distributed k-connectivity tester");
  std::string tkconn_graph, tkconn_out;
  int tkconn_s = 0, tkconn_k = 0, tkconn_reps = 0;
  std::uint64_t tkconn_seed = 0;
  tkconn->add_option("--graph", tkconn_graph, "input graph file")->required();
  tkconn->add_option("--s", tkconn_s, "witness size bound")->required();
  tkconn->add_option("--k", tkconn_k, "connectivity target")->required();
  tkconn->add_option("--reps", tkconn_reps, "override repetition count (0 = schedule)");
  tkconn->add_option("--seed", tkconn_seed, "master seed")->required();
  tkconn->add_option("--out", tkconn_out, "output JSON file (default: stdout)");

  // --- estimate ------------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "estimate Pr[Add(G,t) not k-connected]");
  std::string est_graph, est_out;
  int est_k = 1;
  double est_t = 0.0;
  std::int64_t est_trials = 5000;
  std::uint64_t est_seed = 0;
  est->add_option("--graph", est_graph, "input graph file")->required();
  est->add_option("--k", est_k, "connectivity target")->required();
  est->add_option("--t", est_t, "expected number of added edges")->required();
  est->add_option("--trials", est_trials, "Monte-Carlo trials");
  est->add_option("--seed", est_seed, "master seed")->required();
  est->add_option("--out", est_out, "output CSV file (default: stdout)");

  // --- threshold -----------------------------------------------------------
  auto* thr = app.add_subcommand("threshold", "smallest t with failure rate below target");
  std::string thr_graph, thr_out;
  int thr_k = 1;
  double thr_target = 0.0;
  std::int64_t thr_trials = 5000;
  std::uint64_t thr_seed = 0;
  thr->add_option("--graph", thr_graph, "input graph file")->required();
  thr->add_option("--k", thr_k, "connectivity target")->required();
  thr->add_option("--target", thr_target, "target failure rate in (0,1)")->required();
  thr->add_option("--trials", thr_trials, "Monte-Carlo trials per grid point");
  thr->add_option("--seed", thr_seed, "master seed")->required();
  thr->add_option("--out", thr_out, "output CSV file (default: stdout)");

  // --- experiment drivers ----------------------------------------------------
  auto* g1g2 = app.add_subcommand("exp-g1g2", "section-2 comparison experiment");
  int g1g2_n = 100;
  std::int64_t g1g2_trials = 5000;
  std::uint64_t g1g2_seed = 0;
  std::string g1g2_out;
  g1g2->add_option("--n", g1g2_n, "vertex count (even, >= 16)");
  g1g2->add_option("--trials", g1g2_trials, "Monte-Carlo trials");
  g1g2->add_option("--seed", g1g2_seed, "master seed")->required();
  g1g2->add_option("--out", g1g2_out, "output CSV file (default: stdout)");

  auto* l31 = app.add_subcommand("exp-lemma31", "connectivity threshold scaling experiment");
  std::vector<int> l31_n = {50, 100}, l31_s = {2, 5};
  std::int64_t l31_trials = 5000;
  std::uint64_t l31_seed = 0;
  std::string l31_out;
  l31->add_option("--n", l31_n, "vertex counts");
  l31->add_option("--s", l31_s, "minority component sizes");
  l31->add_option("--trials", l31_trials, "Monte-Carlo trials per grid point");
  l31->add_option("--seed", l31_seed, "master seed")->required();
  l31->add_option("--out", l31_out, "output CSV file (default: stdout)");

  auto* rounds = app.add_subcommand("exp-rounds", "tester round-count scaling experiment");
  std::uint64_t rounds_seed = 0;
  std::string rounds_out;
  rounds->add_option("--seed", rounds_seed, "master seed")->required();
  rounds->add_option("--out", rounds_out, "output CSV file (default: stdout)");

  auto* appx = app.add_subcommand("exp-appendix", "union-vs-doubled-rate experiment");
  int appx_n = 16;
  std::int64_t appx_trials = 20000;
  std::uint64_t appx_seed = 0;
  std::string appx_out;
  appx->add_option("--n", appx_n, "vertex count");
  appx->add_option("--trials", appx_trials, "Monte-Carlo trials");
  appx->add_option("--seed", appx_seed, "master seed")->required();
  appx->add_option("--out", appx_out, "output CSV file (default: stdout)");

  auto* l51 = app.add_subcommand("exp-lemma51", "cluster-growth event frequency experiment");
  std::int64_t l51_trials = 20000;
  std::uint64_t l51_seed = 0;
  std::string l51_out;
  l51->add_option("--trials", l51_trials, "weightings to sample");
  l51->add_option("--seed", l51_seed, "master seed")->required();
  l51->add_option("--out", l51_out, "output CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  using namespace stochnet;
  const auto started = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      InstanceSpec spec;
      auto family = parse_family(gen_family);
      if (!family) throw DomainError("unknown family: " + gen_family);
      spec.family = *family;
      spec.n = gen_n;
      spec.s = gen_s;
      spec.k = gen_k;
      spec.p = gen_p;
      spec.seed = gen_seed;
      if (!gen_sizes.empty()) {
        std::istringstream in(gen_sizes);
        std::string part;
        while (std::getline(in, part, ',')) spec.sizes.push_back(std::stoi(part));
      }
      if (spec.family == Family::kErdosRenyi && !gen_has_seed)
        throw DomainError("erdos-renyi requires --seed");
      log_config("gen", {kv("digest", spec.digest())});
      emit(gen_out, format_graph(generate(spec)));
    } else if (tconn->parsed()) {
      const Graph g = load_graph(tconn_graph);
      log_config("tester-conn", {kv("graph", tconn_graph), kv("n", g.n()),
                                 kv("s", tconn_s), kv("seed", tconn_seed)});
      const RunReport report = run_conn_test(g, tconn_s, tconn_seed);
      nlohmann::json j = run_report_json(report);
      j["verdict"] = tester_verdict(report) == TesterVerdict::SomeReject ? "some-reject"
                                                                         : "all-accept";
      emit(tconn_out, j.dump(2) + "\n");
    } else if (tkconn->parsed()) {
      const Graph g = load_graph(tkconn_graph);
      log_config("tester-kconn",
                 {kv("graph", tkconn_graph), kv("n", g.n()), kv("s", tkconn_s),
                  kv("k", tkconn_k), kv("reps", tkconn_reps), kv("seed", tkconn_seed)});
      const KconnRunResult result = run_kconn_test(
          g, tkconn_s, tkconn_k, tkconn_seed,
          tkconn_reps > 0 ? std::optional<int>(tkconn_reps) : std::nullopt);
      nlohmann::json j{{"verdict", result.verdict == TesterVerdict::SomeReject
                                       ? "some-reject"
                                       : "all-accept"},
                       {"reps_planned", result.reps_planned},
                       {"reps_run", result.reps_run},
                       {"rounds_total", result.rounds_total}};
      if (result.witness) {
        j["witness"] = {{"members", result.witness->set.members()},
                        {"cut_size", result.witness->cut_size}};
      }
      emit(tkconn_out, j.dump(2) + "\n");
    } else if (est->parsed()) {
      const Graph g = load_graph(est_graph);
      log_config("estimate", {kv("graph", est_graph), kv("n", g.n()), kv("k", est_k),
                              kv("t", est_t), kv("trials", est_trials),
                              kv("seed", est_seed), kv("threads", threads)});
      TrialStats st = estimate_failure(g, est_k, est_t, est_trials, est_seed, threads);
      st.family = "file:" + est_graph;
      emit(est_out, trial_stats_csv_header() + "\n" + trial_stats_csv_row(st) + "\n");
    } else if (thr->parsed()) {
      const Graph g = load_graph(thr_graph);
      log_config("threshold", {kv("graph", thr_graph), kv("n", g.n()), kv("k", thr_k),
                               kv("target", thr_target), kv("trials", thr_trials),
                               kv("seed", thr_seed), kv("threads", threads)});
      const double t = threshold_search(g, thr_k, thr_target, thr_trials, thr_seed,
                                        1.25, threads);
      std::ostringstream out;
      out << "n,k,target,trials,threshold,seed\n"
          << g.n() << ',' << thr_k << ',';
      format_double(out, thr_target);
      out << ',' << thr_trials << ',';
      format_double(out, t);
      out << ',' << thr_seed << '\n';
      emit(thr_out, out.str());
    } else if (g1g2->parsed()) {
      log_config("exp-g1g2", {kv("n", g1g2_n), kv("trials", g1g2_trials),
                              kv("seed", g1g2_seed), kv("threads", threads)});
      emit(g1g2_out, experiment_csv(experiment_g1_vs_g2(g1g2_n, g1g2_trials,
                                                        g1g2_seed, threads)));
    } else if (l31->parsed()) {
      log_config("exp-lemma31", {kv("trials", l31_trials), kv("seed", l31_seed),
                                 kv("threads", threads)});
      emit(l31_out, experiment_csv(experiment_lemma31_scaling(l31_n, l31_s, l31_trials,
                                                              l31_seed, threads)));
    } else if (rounds->parsed()) {
      log_config("exp-rounds", {kv("seed", rounds_seed)});
      emit(rounds_out, experiment_csv(experiment_round_counts(rounds_seed)));
    } else if (appx->parsed()) {
      log_config("exp-appendix", {kv("n", appx_n), kv("trials", appx_trials),
                                  kv("seed", appx_seed), kv("threads", threads)});
      emit(appx_out, experiment_csv(experiment_appendix(appx_n, appx_trials,
                                                        appx_seed, threads)));
    } else if (l51->parsed()) {
      log_config("exp-lemma51", {kv("trials", l51_trials), kv("seed", l51_seed)});
      emit(l51_out, experiment_csv(experiment_lemma51(l51_trials, l51_seed)));
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "[done] wall_time_ms=" << elapsed.count() << '\n';
  return 0;
}
