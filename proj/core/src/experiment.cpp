#include "repsc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "repsc/algorithms.hpp"
#include "repsc/errors.hpp"
#include "repsc/metrics.hpp"
#include "repsc/rng.hpp"

namespace repsc {

namespace {

constexpr std::uint64_t kRepresentationStream = 1;
constexpr std::uint64_t kSimilarityStream = 2;
constexpr std::uint64_t kKMeansStream = 3;

constexpr Algorithm kCanonicalOrder[] = {
    Algorithm::Usc,          Algorithm::Nsc,          Algorithm::Urepsc,  Algorithm::Nrepsc,
    Algorithm::UrepscApprox, Algorithm::NrepscApprox, Algorithm::Ufairsc, Algorithm::Nfairsc};

struct MetricField {
  const char* name;
  std::optional<double> MetricValues::* member;
};

constexpr MetricField kMetricFields[] = {
    {"accuracy", &MetricValues::accuracy},
    {"misclustering", &MetricValues::misclustering},
    {"avg_balance", &MetricValues::avg_balance},
    {"ratio_cut", &MetricValues::ratio_cut},
    {"normalized_cut", &MetricValues::normalized_cut},
    {"balance_over_rcut", &MetricValues::balance_over_rcut},
    {"eigengap", &MetricValues::eigengap},
    {"constraint_residual", &MetricValues::constraint_residual},
};

}  // namespace

const char* algorithm_token(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Usc: return "usc";
    case Algorithm::Nsc: return "nsc";
    case Algorithm::Urepsc: return "urepsc";
    case Algorithm::Nrepsc: return "nrepsc";
    case Algorithm::UrepscApprox: return "urepsc_approx";
    case Algorithm::NrepscApprox: return "nrepsc_approx";
    case Algorithm::Ufairsc: return "ufairsc";
    case Algorithm::Nfairsc: return "nfairsc";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_token(const std::string& token) {
  for (Algorithm a : kCanonicalOrder)
    if (token == algorithm_token(a)) return a;
  return std::nullopt;
}

const char* kind_token(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DRegularSweep: return "d_regular_sweep";
    case ExperimentKind::SbmRepresentationSweep: return "sbm_representation_sweep";
    case ExperimentKind::RealMultiplex: return "real_multiplex";
  }
  return "?";
}

const char* axis_token(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::NNodes: return "n_nodes";
    case SweepAxis::NClusters: return "n_clusters";
    case SweepAxis::Degree: return "degree";
    case SweepAxis::ApproxRank: return "approx_rank";
    case SweepAxis::NGroups: return "n_groups";
  }
  return "?";
}

namespace {

// Fixed parameter set at one sweep point, after applying the axis value and
// resolving "auto" fields.
struct Resolved {
  int n_nodes;
  int n_clusters;
  int degree;
  int approx_rank;
  int n_groups;
};

// n_nodes_override carries the ingested node count for multiplex runs,
// where the config's n_nodes field does not apply.
Resolved resolve(const ExperimentConfig& config, int sweep_value, int n_nodes_override = -1) {
  Resolved res{config.n_nodes, config.n_clusters, config.degree, config.approx_rank,
               config.groups.n_groups};
  if (n_nodes_override > 0) res.n_nodes = n_nodes_override;
  switch (config.sweep_axis) {
    case SweepAxis::NNodes: res.n_nodes = sweep_value; break;
    case SweepAxis::NClusters: res.n_clusters = sweep_value; break;
    case SweepAxis::Degree: res.degree = sweep_value; break;
    case SweepAxis::ApproxRank: res.approx_rank = sweep_value; break;
    case SweepAxis::NGroups: res.n_groups = sweep_value; break;
  }
  if (res.approx_rank < 0) res.approx_rank = std::max(1, res.n_nodes / 10);
  if (res.n_groups < 0) res.n_groups = std::max(2, res.n_nodes / 10);
  return res;
}

bool uses(const std::vector<Algorithm>& algorithms, Algorithm a) {
  return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (sweep_values.empty()) throw InvalidConfigError("sweep_values: at least one value required");
  if (n_trials < 1) throw InvalidConfigError("n_trials: must be >= 1");
  if (algorithms.empty()) throw InvalidConfigError("algorithms: at least one required");
  if (kmeans_restarts < 1) throw InvalidConfigError("kmeans_restarts: must be >= 1");
  rsbm.validate();

  const bool wants_approx =
      uses(algorithms, Algorithm::UrepscApprox) || uses(algorithms, Algorithm::NrepscApprox);
  const bool wants_groups =
      uses(algorithms, Algorithm::Ufairsc) || uses(algorithms, Algorithm::Nfairsc);

  if (kind == ExperimentKind::RealMultiplex) {
    // The true node count comes from the ingested file; size-dependent
    // checks happen at run time.
    if (sweep_axis != SweepAxis::ApproxRank && sweep_axis != SweepAxis::NGroups)
      throw InvalidConfigError("sweep_axis: real_multiplex sweeps approx_rank or n_groups only");
    multiplex.validate();
    if (n_clusters < 2) throw InvalidConfigError("n_clusters: must be >= 2");
    return;
  }

  for (int value : sweep_values) {
    const Resolved res = resolve(*this, value);
    const std::string at = " (sweep value " + std::to_string(value) + ")";
    if (res.n_clusters < 2) throw InvalidConfigError("n_clusters: must be >= 2" + at);
    if (res.n_nodes < res.n_clusters) throw InvalidConfigError("n_nodes: must be >= n_clusters" + at);
    if (res.n_nodes % res.n_clusters != 0)
      throw InvalidConfigError("n_clusters: must divide n_nodes" + at);
    if (kind == ExperimentKind::DRegularSweep) {
      if (res.degree % res.n_clusters != 0)
        throw InvalidConfigError("degree: must be a multiple of n_clusters" + at);
      if (res.degree < res.n_clusters || res.degree > res.n_nodes)
        throw InvalidConfigError("degree: must satisfy n_clusters <= degree <= n_nodes" + at);
      const int t = res.degree / res.n_clusters;
      const int m = res.n_nodes / res.n_clusters;
      if (t > m) throw InvalidConfigError("degree: degree/K exceeds block size N/K" + at);
      if (t % 2 == 0 && m % 2 != 0)
        throw InvalidConfigError("degree: even degree/K needs an even block size N/K" + at);
    }
    if (kind == ExperimentKind::SbmRepresentationSweep || wants_groups) {
      if (res.n_groups < 2) throw InvalidConfigError("n_groups: must be >= 2" + at);
      if (res.n_groups > res.n_nodes) throw InvalidConfigError("n_groups: exceeds n_nodes" + at);
      ProtectedGroupParams gp = groups;
      gp.n_groups = res.n_groups;
      gp.validate();
    }
    if (wants_approx) {
      if (res.approx_rank < 1 || res.approx_rank > res.n_nodes - res.n_clusters)
        throw InvalidConfigError("approx_rank: must be in [1, n_nodes - n_clusters]" + at);
    }
  }
}

namespace {

std::optional<double> finite_or_none(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

TrialRow run_one(Algorithm algorithm, const Graph& similarity, const Graph& representation,
                 const ClusterAssignment* ground_truth, const Resolved& res,
                 const KMeansConfig& kmeans_config) {
  TrialRow row;
  row.algorithm = algorithm;
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<ClusteringOutput> out;
  try {
    switch (algorithm) {
      case Algorithm::Usc:
        out = unnormalized_sc(similarity, res.n_clusters, kmeans_config);
        break;
      case Algorithm::Nsc:
        out = normalized_sc(similarity, res.n_clusters, kmeans_config);
        break;
      case Algorithm::Urepsc:
        out = urepsc(similarity, representation, res.n_clusters, kmeans_config);
        break;
      case Algorithm::Nrepsc:
        out = nrepsc(similarity, representation, res.n_clusters, kmeans_config);
        break;
      case Algorithm::UrepscApprox:
        out = urepsc_approx(similarity, representation, res.n_clusters, res.approx_rank, kmeans_config);
        break;
      case Algorithm::NrepscApprox:
        out = nrepsc_approx(similarity, representation, res.n_clusters, res.approx_rank, kmeans_config);
        break;
      case Algorithm::Ufairsc:
        out = fairsc_baseline(similarity, representation, res.n_clusters, res.n_groups, kmeans_config,
                              false);
        break;
      case Algorithm::Nfairsc:
        out = fairsc_baseline(similarity, representation, res.n_clusters, res.n_groups, kmeans_config,
                              true);
        break;
    }
  } catch (const RankInfeasibleError&) {
    row.status = "rank_infeasible";
  } catch (const NotPositiveDefiniteError&) {
    row.status = "not_positive_definite";
  } catch (const DegenerateClusterError&) {
    row.status = "degenerate_cluster";
  }
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!out) return row;

  const ClusterAssignment& assignment = out->assignment;
  if (ground_truth != nullptr) {
    const auto mis = misclustering(*ground_truth, assignment);
    row.metrics.accuracy = mis.accuracy;
    row.metrics.misclustering = mis.fraction;
  }
  row.metrics.avg_balance = node_balance(representation, assignment).average;
  try {
    row.metrics.ratio_cut = ratio_cut(similarity, assignment);
  } catch (const DegenerateClusterError&) {
  }
  try {
    row.metrics.normalized_cut = normalized_cut(similarity, assignment);
  } catch (const DegenerateClusterError&) {
  }
  if (row.metrics.ratio_cut && *row.metrics.ratio_cut > 0.0 && row.metrics.avg_balance)
    row.metrics.balance_over_rcut = *row.metrics.avg_balance / *row.metrics.ratio_cut;
  if (auto it = out->diagnostics.find("eigengap"); it != out->diagnostics.end())
    row.metrics.eigengap = finite_or_none(it->second);
  if (auto it = out->diagnostics.find("constraint_residual"); it != out->diagnostics.end())
    row.metrics.constraint_residual = finite_or_none(it->second);
  return row;
}

void aggregate_rows(ResultsTable& table, const std::vector<Algorithm>& algorithms,
                    const std::vector<int>& sweep_values) {
  for (int value : sweep_values) {
    for (Algorithm alg : kCanonicalOrder) {
      if (!uses(algorithms, alg)) continue;
      AggregateRow agg;
      agg.sweep_value = value;
      agg.algorithm = alg;
      for (const TrialRow& row : table.trials)
        if (row.sweep_value == value && row.algorithm == alg && row.status == "ok") ++agg.n_ok;
      for (const MetricField& field : kMetricFields) {
        std::vector<double> values;
        for (const TrialRow& row : table.trials) {
          if (row.sweep_value != value || row.algorithm != alg || row.status != "ok") continue;
          if (const auto& v = row.metrics.*(field.member)) values.push_back(*v);
        }
        if (values.empty()) continue;
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(var / (values.size() - 1)) : 0.0;
        agg.mean.*(field.member) = mean;
        agg.stddev.*(field.member) = sd;
      }
      table.aggregates.push_back(std::move(agg));
    }
  }
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::optional<MultiplexGraphs> multiplex_graphs;
  if (config.kind == ExperimentKind::RealMultiplex)
    multiplex_graphs = ingest_multiplex(config.multiplex);

  std::vector<Algorithm> ordered;
  for (Algorithm a : kCanonicalOrder)
    if (uses(config.algorithms, a)) ordered.push_back(a);

  ResultsTable table;
  table.sweep_axis_name = axis_token(config.sweep_axis);

  int n_threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, config.n_trials));

  const int multiplex_nodes =
      multiplex_graphs ? multiplex_graphs->similarity.n_nodes() : -1;
  for (int value : config.sweep_values) {
    const Resolved res = resolve(config, value, multiplex_nodes);

    std::optional<ClusterAssignment> ground_truth;
    std::optional<ClusterAssignment> group_assignment;
    std::optional<Graph> fixed_representation;
    if (config.kind == ExperimentKind::RealMultiplex) {
      fixed_representation = multiplex_graphs->representation;
    } else {
      ground_truth = ground_truth_assignment(res.n_nodes, res.n_clusters);
      if (config.kind == ExperimentKind::DRegularSweep)
        fixed_representation =
            make_d_regular_representation(res.n_nodes, res.n_clusters, res.degree, *ground_truth);
      else
        group_assignment = near_equal_blocks(res.n_nodes, res.n_groups);
    }

    std::vector<std::vector<TrialRow>> per_trial(config.n_trials);
    std::atomic<int> next_trial{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
      for (;;) {
        const int trial = next_trial.fetch_add(1);
        if (trial >= config.n_trials) return;
        try {
          const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial);
          std::optional<Graph> sampled_representation;
          if (config.kind == ExperimentKind::SbmRepresentationSweep)
            sampled_representation = sample_group_representation(
                res.n_nodes, *group_assignment,
                ProtectedGroupParams{res.n_groups, config.groups.p_in, config.groups.p_out},
                Rng::derive(seed, kRepresentationStream));
          const Graph& representation =
              sampled_representation ? *sampled_representation : *fixed_representation;

          std::optional<Graph> sampled_similarity;
          if (config.kind != ExperimentKind::RealMultiplex)
            sampled_similarity = sample_rsbm(representation, *ground_truth, config.rsbm,
                                             Rng::derive(seed, kSimilarityStream));
          const Graph& similarity =
              sampled_similarity ? *sampled_similarity : multiplex_graphs->similarity;

          KMeansConfig kmeans_config;
          kmeans_config.n_restarts = config.kmeans_restarts;
          kmeans_config.seed = Rng::derive(seed, kKMeansStream);

          std::vector<TrialRow>& rows = per_trial[trial];
          for (Algorithm alg : ordered) {
            TrialRow row = run_one(alg, similarity, representation,
                                   ground_truth ? &*ground_truth : nullptr, res, kmeans_config);
            row.sweep_value = value;
            row.trial = trial;
            row.seed = seed;
            rows.push_back(std::move(row));
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    // Emit rows in (algorithm, trial) order within this sweep value.
    for (Algorithm alg : ordered)
      for (int trial = 0; trial < config.n_trials; ++trial)
        for (const TrialRow& row : per_trial[trial])
          if (row.algorithm == alg) table.trials.push_back(row);
  }

  aggregate_rows(table, ordered, config.sweep_values);
  return table;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void write_trial_csv(const ResultsTable& table, std::ostream& out) {
  out << "sweep_axis,sweep_value,algorithm,trial,seed,status";
  for (const MetricField& field : kMetricFields) out << "," << field.name;
  out << "\n";
  for (const TrialRow& row : table.trials) {
    out << table.sweep_axis_name << "," << row.sweep_value << "," << algorithm_token(row.algorithm)
        << "," << row.trial << "," << row.seed << "," << row.status;
    for (const MetricField& field : kMetricFields) out << "," << format_opt(row.metrics.*(field.member));
    out << "\n";
  }
}

void write_aggregate_csv(const ResultsTable& table, std::ostream& out) {
  out << "sweep_axis,sweep_value,algorithm,n_ok";
  for (const MetricField& field : kMetricFields)
    out << "," << field.name << "_mean," << field.name << "_std";
  out << "\n";
  for (const AggregateRow& row : table.aggregates) {
    out << table.sweep_axis_name << "," << row.sweep_value << "," << algorithm_token(row.algorithm)
        << "," << row.n_ok;
    for (const MetricField& field : kMetricFields)
      out << "," << format_opt(row.mean.*(field.member)) << ","
          << format_opt(row.stddev.*(field.member));
    out << "\n";
  }
}

void write_timing_csv(const ResultsTable& table, std::ostream& out) {
  out << "sweep_value,algorithm,trial,wall_ms\n";
  for (const TrialRow& row : table.trials)
    out << row.sweep_value << "," << algorithm_token(row.algorithm) << "," << row.trial << ","
        << format_double(row.wall_ms) << "\n";
}

namespace {

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::string ext = ".csv";
  if (path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
    return path.substr(0, path.size() - ext.size()) + suffix + ext;
  return path + suffix;
}

}  // namespace

std::string aggregate_path_for(const std::string& trial_path) {
  return with_suffix(trial_path, "_aggregate");
}

std::string timing_path_for(const std::string& trial_path) {
  return with_suffix(trial_path, "_timing");
}

void write_results_files(const ResultsTable& table, const std::string& trial_path) {
  std::ofstream trial_out(trial_path);
  if (!trial_out) throw InvalidConfigError("cannot open output file: " + trial_path);
  write_trial_csv(table, trial_out);

  std::ofstream agg_out(aggregate_path_for(trial_path));
  if (!agg_out) throw InvalidConfigError("cannot open output file: " + aggregate_path_for(trial_path));
  write_aggregate_csv(table, agg_out);

  std::ofstream timing_out(timing_path_for(trial_path));
  if (!timing_out) throw InvalidConfigError("cannot open output file: " + timing_path_for(trial_path));
  write_timing_csv(table, timing_out);
}

namespace {

struct ConfigLine {
  std::string section;
  std::string key;
  std::string value;
  int line_no;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

int parse_int(const ConfigLine& line) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(line.value, &pos);
    if (pos != line.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidConfigError(line.key + ": expected an integer (line " + std::to_string(line.line_no) +
                             ")");
  }
}

std::uint64_t parse_u64(const ConfigLine& line) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(line.value, &pos);
    if (pos != line.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidConfigError(line.key + ": expected a nonnegative integer (line " +
                             std::to_string(line.line_no) + ")");
  }
}

double parse_real(const ConfigLine& line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(line.value, &pos);
    if (pos != line.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidConfigError(line.key + ": expected a real number (line " + std::to_string(line.line_no) +
                             ")");
  }
}

int parse_int_or_auto(const ConfigLine& line) {
  if (line.value == "auto") return -1;
  return parse_int(line);
}

std::pair<int, int> parse_range(const ConfigLine& line) {
  const auto tokens = split_tokens(line.value);
  if (tokens.size() != 2)
    throw InvalidConfigError(line.key + ": expected \"lo hi\" (line " + std::to_string(line.line_no) +
                             ")");
  try {
    return {std::stoi(tokens[0]), std::stoi(tokens[1])};
  } catch (const std::exception&) {
    throw InvalidConfigError(line.key + ": expected integers (line " + std::to_string(line.line_no) +
                             ")");
  }
}

void apply_line(ExperimentConfig& config, const ConfigLine& line) {
  const std::string where = " (line " + std::to_string(line.line_no) + ")";
  if (line.section == "experiment") {
    if (line.key == "kind") {
      if (line.value == "d_regular_sweep") config.kind = ExperimentKind::DRegularSweep;
      else if (line.value == "sbm_representation_sweep") config.kind = ExperimentKind::SbmRepresentationSweep;
      else if (line.value == "real_multiplex") config.kind = ExperimentKind::RealMultiplex;
      else throw InvalidConfigError("kind: unknown experiment kind \"" + line.value + "\"" + where);
    } else if (line.key == "sweep_axis") {
      if (line.value == "n_nodes") config.sweep_axis = SweepAxis::NNodes;
      else if (line.value == "n_clusters") config.sweep_axis = SweepAxis::NClusters;
      else if (line.value == "degree") config.sweep_axis = SweepAxis::Degree;
      else if (line.value == "approx_rank") config.sweep_axis = SweepAxis::ApproxRank;
      else if (line.value == "n_groups") config.sweep_axis = SweepAxis::NGroups;
      else throw InvalidConfigError("sweep_axis: unknown axis \"" + line.value + "\"" + where);
    } else if (line.key == "sweep_values") {
      config.sweep_values.clear();
      for (const auto& token : split_tokens(line.value)) {
        try {
          config.sweep_values.push_back(std::stoi(token));
        } catch (const std::exception&) {
          throw InvalidConfigError("sweep_values: expected integers" + where);
        }
      }
    } else if (line.key == "n_trials") {
      config.n_trials = parse_int(line);
    } else if (line.key == "base_seed") {
      config.base_seed = parse_u64(line);
    } else if (line.key == "algorithms") {
      config.algorithms.clear();
      for (const auto& token : split_tokens(line.value)) {
        const auto alg = algorithm_from_token(token);
        if (!alg) throw InvalidConfigError("algorithms: unknown algorithm \"" + token + "\"" + where);
        if (!uses(config.algorithms, *alg)) config.algorithms.push_back(*alg);
      }
    } else if (line.key == "output") {
      config.output_path = line.value;
    } else if (line.key == "threads") {
      config.threads = parse_int(line);
    } else if (line.key == "kmeans_restarts") {
      config.kmeans_restarts = parse_int(line);
    } else {
      throw InvalidConfigError("unknown key \"" + line.key + "\" in [experiment]" + where);
    }
  } else if (line.section == "model") {
    if (line.key == "n_nodes") config.n_nodes = parse_int(line);
    else if (line.key == "n_clusters") config.n_clusters = parse_int(line);
    else if (line.key == "degree") config.degree = parse_int(line);
    else if (line.key == "p") config.rsbm.p = parse_real(line);
    else if (line.key == "q") config.rsbm.q = parse_real(line);
    else if (line.key == "r") config.rsbm.r = parse_real(line);
    else if (line.key == "s") config.rsbm.s = parse_real(line);
    else if (line.key == "p_in") config.groups.p_in = parse_real(line);
    else if (line.key == "p_out") config.groups.p_out = parse_real(line);
    else if (line.key == "n_groups") config.groups.n_groups = parse_int_or_auto(line);
    else if (line.key == "approx_rank") config.approx_rank = parse_int_or_auto(line);
    else throw InvalidConfigError("unknown key \"" + line.key + "\" in [model]" + where);
  } else if (line.section == "multiplex") {
    if (line.key == "file") config.multiplex.path = line.value;
    else if (line.key == "knn") config.multiplex.knn = parse_int(line);
    else if (line.key == "n_nodes") config.multiplex.n_nodes = parse_int(line);
    else if (line.key == "representation_layers") config.multiplex.representation_layers = parse_range(line);
    else if (line.key == "similarity_layers") config.multiplex.similarity_layers = parse_range(line);
    else throw InvalidConfigError("unknown key \"" + line.key + "\" in [multiplex]" + where);
  } else {
    throw InvalidConfigError("unknown section [" + line.section + "]" + where);
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw InvalidConfigError("malformed section header (line " + std::to_string(line_no) + ")");
      section = text.substr(1, text.size() - 2);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw InvalidConfigError("expected key = value (line " + std::to_string(line_no) + ")");
    ConfigLine entry{section, trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line_no};
    if (entry.section.empty())
      throw InvalidConfigError("key \"" + entry.key + "\" appears before any section (line " +
                               std::to_string(line_no) + ")");
    apply_line(config, entry);
  }
  return config;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("cannot open config file: " + path);
  return parse_experiment_config(in);
}

}  // namespace repsc
