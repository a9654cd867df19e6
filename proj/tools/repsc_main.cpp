#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "repsc/algorithms.hpp"
#include "repsc/errors.hpp"
#include "repsc/experiment.hpp"
#include "repsc/metrics.hpp"
#include "repsc/oracle.hpp"
#include "repsc/rng.hpp"
#include "repsc/rsbm.hpp"
#include "repsc/spectral.hpp"

namespace {

using namespace repsc;

void print_metric(const char* name, double value) {
  std::printf("%s %.17g\n", name, value);
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string kind = "d_regular";
  int n_nodes = 24;
  int n_clusters = 2;
  int degree = 6;
  int n_groups = 5;
  double p_in = 0.8, p_out = 0.2;
  RsbmParams rsbm;
  std::uint64_t seed = 0;
  std::string rep_out;
  std::string sim_out;
  std::string labels_out;
};

int run_generate(const GenerateOptions& opt) {
  // The planted clusters are only needed for the d-regular pattern, for
  // sampling a similarity graph and for the labels file.
  std::optional<ClusterAssignment> ground_truth;
  auto planted = [&]() -> const ClusterAssignment& {
    if (!ground_truth) ground_truth = ground_truth_assignment(opt.n_nodes, opt.n_clusters);
    return *ground_truth;
  };

  Graph representation = [&]() {
    if (opt.kind == "d_regular")
      return make_d_regular_representation(opt.n_nodes, opt.n_clusters, opt.degree, planted());
    const ClusterAssignment groups = near_equal_blocks(opt.n_nodes, opt.n_groups);
    if (opt.kind == "sbm_groups")
      return sample_group_representation(opt.n_nodes, groups,
                                         ProtectedGroupParams{opt.n_groups, opt.p_in, opt.p_out},
                                         Rng::derive(opt.seed, 1));
    if (opt.kind == "block_diagonal") return block_diagonal_representation(groups);
    throw InvalidConfigError("unknown generator kind \"" + opt.kind + "\"");
  }();

  if (!opt.rep_out.empty()) write_edge_list_file(representation, opt.rep_out);
  if (!opt.sim_out.empty()) {
    Graph similarity = sample_rsbm(representation, planted(), opt.rsbm, Rng::derive(opt.seed, 2));
    write_edge_list_file(similarity, opt.sim_out);
  }
  if (!opt.labels_out.empty()) write_labels_file(planted(), opt.labels_out);

  std::printf("generated kind=%s n=%d k=%d seed=%llu\n", opt.kind.c_str(), opt.n_nodes,
              opt.n_clusters, static_cast<unsigned long long>(opt.seed));
  return 0;
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterOptions {
  std::string similarity_path;
  std::string representation_path;
  std::string truth_path;
  std::string labels_out;
  std::string algorithm = "urepsc";
  int n_clusters = 2;
  int approx_rank = -1;
  int n_groups = -1;
  int n_nodes = -1;
  int restarts = 50;
  std::uint64_t seed = 0;
};

int run_cluster(const ClusterOptions& opt) {
  const auto alg = algorithm_from_token(opt.algorithm);
  if (!alg) throw InvalidConfigError("unknown algorithm \"" + opt.algorithm + "\"");

  Graph similarity = read_edge_list_file(opt.similarity_path, false, opt.n_nodes);
  const int n = similarity.n_nodes();

  const bool needs_rep = *alg != Algorithm::Usc && *alg != Algorithm::Nsc;
  std::optional<Graph> representation;
  if (!opt.representation_path.empty())
    representation = read_edge_list_file(opt.representation_path, true, n);
  if (needs_rep && !representation)
    throw InvalidConfigError("algorithm " + opt.algorithm + " needs --representation");

  KMeansConfig cfg;
  cfg.seed = opt.seed;
  cfg.n_restarts = opt.restarts;

  const int rank = opt.approx_rank > 0 ? opt.approx_rank : std::max(1, n / 10);
  const int groups = opt.n_groups > 0 ? opt.n_groups : std::max(2, n / 10);

  ClusteringOutput out = [&]() {
    switch (*alg) {
      case Algorithm::Usc: return unnormalized_sc(similarity, opt.n_clusters, cfg);
      case Algorithm::Nsc: return normalized_sc(similarity, opt.n_clusters, cfg);
      case Algorithm::Urepsc: return urepsc(similarity, *representation, opt.n_clusters, cfg);
      case Algorithm::Nrepsc: return nrepsc(similarity, *representation, opt.n_clusters, cfg);
      case Algorithm::UrepscApprox:
        return urepsc_approx(similarity, *representation, opt.n_clusters, rank, cfg);
      case Algorithm::NrepscApprox:
        return nrepsc_approx(similarity, *representation, opt.n_clusters, rank, cfg);
      case Algorithm::Ufairsc:
        return fairsc_baseline(similarity, *representation, opt.n_clusters, groups, cfg, false);
      case Algorithm::Nfairsc:
        return fairsc_baseline(similarity, *representation, opt.n_clusters, groups, cfg, true);
    }
    throw InvalidConfigError("unreachable");
  }();

  std::printf("algorithm %s\n", opt.algorithm.c_str());
  std::printf("n_nodes %d\n", n);
  std::printf("n_clusters %d\n", opt.n_clusters);
  print_metric("ratio_cut", ratio_cut(similarity, out.assignment));
  try {
    print_metric("normalized_cut", normalized_cut(similarity, out.assignment));
  } catch (const DegenerateClusterError&) {
  }
  if (representation)
    print_metric("avg_balance", node_balance(*representation, out.assignment).average);
  for (const auto& [key, value] : out.diagnostics) print_metric(key.c_str(), value);

  if (!opt.truth_path.empty()) {
    ClusterAssignment truth = read_labels_file(opt.truth_path, opt.n_clusters);
    const auto mis = misclustering(truth, out.assignment);
    print_metric("accuracy", mis.accuracy);
    print_metric("misclustering", mis.fraction);
  }
  if (!opt.labels_out.empty()) write_labels_file(out.assignment, opt.labels_out);
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
  std::string config_path;
  std::string out_override;
  std::string algorithms_override;
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;
  int threads_override = -1;
};

int run_experiment_cmd(const ExperimentOptions& opt) {
  ExperimentConfig config = parse_experiment_config_file(opt.config_path);
  if (!opt.out_override.empty()) config.output_path = opt.out_override;
  if (opt.has_seed_override) config.base_seed = opt.seed_override;
  if (opt.threads_override >= 0) config.threads = opt.threads_override;
  if (!opt.algorithms_override.empty()) {
    config.algorithms.clear();
    std::string token;
    std::istringstream ss(opt.algorithms_override);
    while (std::getline(ss, token, ',')) {
      const auto alg = algorithm_from_token(token);
      if (!alg) throw InvalidConfigError("unknown algorithm \"" + token + "\"");
      config.algorithms.push_back(*alg);
    }
  }

  ResultsTable table = run_experiment(config);
  write_results_files(table, config.output_path);

  int ok = 0;
  for (const auto& row : table.trials)
    if (row.status == "ok") ++ok;
  std::printf("experiment done: %zu rows (%d ok) -> %s\n", table.trials.size(), ok,
              config.output_path.c_str());
  std::printf("aggregates -> %s\n", aggregate_path_for(config.output_path).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify

bool report(const char* name, bool pass, const std::string& detail = "") {
  std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
              detail.c_str());
  return pass;
}

Graph random_graph(int n, double edge_prob, Rng& rng) {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < edge_prob) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
  return Graph::from_adjacency(std::move(adj), false);
}

ClusterAssignment random_assignment(int n, int k, Rng& rng) {
  for (;;) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(rng.uniform_index(k));
    ClusterAssignment assignment(labels, k);
    const auto sizes = assignment.cluster_sizes();
    if (*std::min_element(sizes.begin(), sizes.end()) > 0) return assignment;
  }
}

bool check_trace_identities() {
  Rng rng(20240);
  double worst_rcut = 0.0, worst_ncut = 0.0;
  int ncut_checked = 0;
  for (int round = 0; round < 50; ++round) {
    const int n = 5 + static_cast<int>(rng.uniform_index(26));
    const int k = 2 + static_cast<int>(rng.uniform_index(3));
    Graph g = random_graph(n, 0.3, rng);
    ClusterAssignment assignment = random_assignment(n, k, rng);
    auto bundle = laplacian(g);

    const double rcut = ratio_cut(g, assignment);
    const Eigen::MatrixXd h = h_matrix(assignment);
    worst_rcut = std::max(worst_rcut, std::abs(rcut - (h.transpose() * bundle.laplacian * h).trace()));

    Eigen::VectorXd volumes = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < n; ++i) volumes(assignment.label(i)) += bundle.degree(i);
    if (volumes.minCoeff() > 0.0) {
      const double ncut = normalized_cut(g, assignment);
      const Eigen::MatrixXd t = t_matrix(assignment, bundle.degree);
      worst_ncut = std::max(worst_ncut, std::abs(ncut - (t.transpose() * bundle.laplacian * t).trace()));
      ++ncut_checked;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "max |RCut-trace|=%.2e, max |NCut-trace|=%.2e (%d NCut cases)",
                worst_rcut, worst_ncut, ncut_checked);
  return report("trace identities on random graphs", worst_rcut < 1e-9 && worst_ncut < 1e-9, detail);
}

bool check_misclustering_oracle() {
  Rng rng(555);
  for (int round = 0; round < 200; ++round) {
    const int k = 2 + static_cast<int>(rng.uniform_index(5));
    const int n = k + static_cast<int>(rng.uniform_index(60 - k + 1));
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng.uniform_index(k));
      b[i] = static_cast<int>(rng.uniform_index(k));
    }
    ClusterAssignment truth(a, k), predicted(b, k);
    const auto fast = misclustering(truth, predicted);

    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    int best = n + 1;
    do {
      int mistakes = 0;
      for (int i = 0; i < n; ++i)
        if (a[i] != perm[b[i]]) ++mistakes;
      best = std::min(best, mistakes);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const int fast_mistakes = static_cast<int>(std::lround(fast.fraction * n / 2.0));
    if (fast_mistakes != best)
      return report("misclustering equals brute-force permutation minimum", false,
                    "round " + std::to_string(round));
  }
  return report("misclustering equals brute-force permutation minimum", true, "200 instances");
}

bool check_regular_representation() {
  bool ok = true;
  for (auto [n, k, d] : std::vector<std::array<int, 3>>{{24, 2, 6}, {120, 4, 12}}) {
    auto gt = ground_truth_assignment(n, k);
    Graph rep = make_d_regular_representation(n, k, d, gt);
    const auto& adj = rep.adjacency();
    bool rows_ok = ((adj.rowwise().sum().array() - d).abs() < 0.5).all();
    bool diag_ok = (adj.diagonal().array() == 1.0).all();
    bool counts_ok = true;
    for (int i = 0; i < n && counts_ok; ++i) {
      std::vector<int> per_cluster(k, 0);
      for (int j = 0; j < n; ++j)
        if (adj(i, j) != 0.0) ++per_cluster[gt.label(j)];
      for (int c = 0; c < k; ++c)
        if (per_cluster[c] != d / k) counts_ok = false;
    }
    ok = ok && rows_ok && diag_ok && counts_ok;
  }
  return report("regular representation construction invariants", ok, "(24,2,6) and (120,4,12)");
}

bool check_population_eigenvalues() {
  const int n = 24, k = 2, d = 6;
  RsbmParams params;  // 0.4 / 0.3 / 0.2 / 0.1
  auto gt = ground_truth_assignment(n, k);
  Graph rep = make_d_regular_representation(n, k, d, gt);
  auto model = expected_adjacency(rep, gt, params);
  const auto closed = closed_form_eigenvalues(params, n, k, d);

  const auto& full = model.expected_adjacency_with_diagonal;
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double res1 = (full * ones - closed.leading * ones).cwiseAbs().maxCoeff();

  Eigen::MatrixXd u = cluster_contrast_vectors(n, k);
  double res2 = 0.0;
  for (int c = 0; c < u.cols(); ++c)
    res2 = std::max(res2, (full * u.col(c) - closed.cluster * u.col(c)).cwiseAbs().maxCoeff());

  // Null-space residuals of the all-ones and contrast directions.
  const auto& rep_adj = rep.adjacency();
  auto operator_residual = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd centered = x.array() - x.mean();
    return (rep_adj * centered).cwiseAbs().maxCoeff();
  };
  double res3 = operator_residual(ones);
  for (int c = 0; c < u.cols(); ++c) res3 = std::max(res3, operator_residual(u.col(c)));

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "leading=%.6g (expect %.6g), cluster=%.6g, residuals %.1e / %.1e",
                closed.leading, 4.8, closed.cluster, std::max(res1, res2), res3);
  const bool ok = std::abs(closed.leading - 4.8) < 1e-12 && std::abs(closed.cluster - 1.2) < 1e-12 &&
                  res1 < 1e-9 && res2 < 1e-9 && res3 < 1e-9;
  return report("population eigenvalue closed forms at (24,2,6)", ok, detail);
}

bool check_population_recovery() {
  const int n = 120, k = 4, d = 12;
  RsbmParams params;
  auto gt = ground_truth_assignment(n, k);
  Graph rep = make_d_regular_representation(n, k, d, gt);
  auto model = expected_adjacency(rep, gt, params);

  KMeansConfig cfg;
  cfg.seed = 7;
  auto out_u = urepsc(model.expected_adjacency, rep.adjacency(), k, cfg);
  auto out_n = nrepsc(model.expected_adjacency, rep.adjacency(), k, cfg);
  const double m_u = misclustering(gt, out_u.assignment).fraction;
  const double m_n = misclustering(gt, out_n.assignment).fraction;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "M=%.3g (unnormalized), M=%.3g (normalized)", m_u, m_n);
  return report("population-level exact recovery at (120,4,12)", m_u == 0.0 && m_n == 0.0, detail);
}

bool check_canonical_basis() {
  Eigen::MatrixXd y = canonical_cluster_basis(120, 4);
  const double dev = (y.transpose() * y - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff();
  return report("canonical cluster basis orthonormal", dev < 1e-12,
                "max |Y^T Y - I| = " + std::to_string(dev));
}

int run_verify() {
  bool ok = true;
  ok &= check_trace_identities();
  ok &= check_misclustering_oracle();
  ok &= check_regular_representation();
  ok &= check_population_eigenvalues();
  ok &= check_canonical_basis();
  ok &= check_population_recovery();
  std::printf("%s\n", ok ? "verify: all checks passed" : "verify: FAILURES above");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation-aware spectral clustering toolkit"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Sample graphs and write edge-list files");
  generate->add_option("--kind", gen.kind, "d_regular | sbm_groups | block_diagonal");
  generate->add_option("-n,--nodes", gen.n_nodes, "number of nodes");
  generate->add_option("-k,--clusters", gen.n_clusters, "number of planted clusters");
  generate->add_option("-d,--degree", gen.degree, "representation degree (d_regular)");
  generate->add_option("--groups", gen.n_groups, "number of protected groups");
  generate->add_option("--p-in", gen.p_in, "within-group link probability");
  generate->add_option("--p-out", gen.p_out, "across-group link probability");
  generate->add_option("--p", gen.rsbm.p, "same cluster, linked in R");
  generate->add_option("--q", gen.rsbm.q, "different cluster, linked in R");
  generate->add_option("--r", gen.rsbm.r, "same cluster, not linked");
  generate->add_option("--s", gen.rsbm.s, "different cluster, not linked");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--rep-out", gen.rep_out, "representation graph output path");
  generate->add_option("--sim-out", gen.sim_out, "sampled similarity graph output path");
  generate->add_option("--labels-out", gen.labels_out, "ground-truth labels output path");

  ClusterOptions clu;
  auto* cluster = app.add_subcommand("cluster", "Run one algorithm on graph files and print metrics");
  cluster->add_option("--similarity", clu.similarity_path, "similarity edge-list file")->required();
  cluster->add_option("--representation", clu.representation_path, "representation edge-list file");
  cluster->add_option("--algorithm", clu.algorithm,
                      "usc|nsc|urepsc|nrepsc|urepsc_approx|nrepsc_approx|ufairsc|nfairsc");
  cluster->add_option("-k,--clusters", clu.n_clusters, "number of clusters")->required();
  cluster->add_option("--approx-rank", clu.approx_rank, "rank for the approximate variants");
  cluster->add_option("--groups", clu.n_groups, "group count for the fairness baselines");
  cluster->add_option("--nodes", clu.n_nodes, "node count override");
  cluster->add_option("--restarts", clu.restarts, "k-means restarts");
  cluster->add_option("--seed", clu.seed, "k-means seed");
  cluster->add_option("--truth", clu.truth_path, "ground-truth labels file (enables accuracy)");
  cluster->add_option("--labels-out", clu.labels_out, "write the assignment to this labels file");

  ExperimentOptions exp;
  auto* experiment = app.add_subcommand("experiment", "Run a sweep described by a config file");
  experiment->add_option("--config", exp.config_path, "experiment config file")->required();
  experiment->add_option("--out", exp.out_override, "override the output path");
  auto* seed_opt = experiment->add_option("--seed", exp.seed_override, "override the base seed");
  experiment->add_option("--algorithms", exp.algorithms_override, "override algorithms (comma list)");
  experiment->add_option("--threads", exp.threads_override, "worker threads (0 = hardware)");

  auto* verify = app.add_subcommand("verify", "Run the oracle and property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  exp.has_seed_override = seed_opt->count() > 0;

  try {
    if (generate->parsed()) return run_generate(gen);
    if (cluster->parsed()) return run_cluster(clu);
    if (experiment->parsed()) return run_experiment_cmd(exp);
    if (verify->parsed()) return run_verify();
  } catch (const repsc::InvalidConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const repsc::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
