#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "repsc/multiplex.hpp"
#include "repsc/rsbm.hpp"

namespace repsc {

enum class ExperimentKind { DRegularSweep, SbmRepresentationSweep, RealMultiplex };
enum class SweepAxis { NNodes, NClusters, Degree, ApproxRank, NGroups };
enum class Algorithm { Usc, Nsc, Urepsc, Nrepsc, UrepscApprox, NrepscApprox, Ufairsc, Nfairsc };

const char* algorithm_token(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_token(const std::string& token);
const char* kind_token(ExperimentKind kind);
const char* axis_token(SweepAxis axis);

/// Sweep description: one axis varies over sweep_values, everything else is
/// fixed. approx_rank and n_groups may be -1 ("auto"), which resolves to
/// N/10 at each sweep point.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::DRegularSweep;
  SweepAxis sweep_axis = SweepAxis::NNodes;
  std::vector<int> sweep_values;
  int n_trials = 1;
  std::uint64_t base_seed = 0;
  std::vector<Algorithm> algorithms;
  std::string output_path = "results.csv";
  int threads = 0;  // 0 = hardware concurrency
  int kmeans_restarts = 50;

  int n_nodes = 24;
  int n_clusters = 2;
  int degree = 6;
  RsbmParams rsbm;
  ProtectedGroupParams groups{-1, 0.8, 0.2};  // n_groups -1 = auto
  int approx_rank = -1;                       // -1 = auto

  MultiplexSpec multiplex;

  /// Checks every sweep point up front; throws InvalidConfigError naming the
  /// offending field.
  void validate() const;
};

/// Sectioned key=value text ("[experiment]", "[model]", "[multiplex]"); see
/// the project README for the full key list. Unknown keys are errors.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

struct MetricValues {
  std::optional<double> accuracy;
  std::optional<double> misclustering;
  std::optional<double> avg_balance;
  std::optional<double> ratio_cut;
  std::optional<double> normalized_cut;
  std::optional<double> balance_over_rcut;
  std::optional<double> eigengap;
  std::optional<double> constraint_residual;
};

struct TrialRow {
  int sweep_value = 0;
  Algorithm algorithm = Algorithm::Usc;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // or the error kind; metrics empty then
  MetricValues metrics;
  double wall_ms = 0.0;
};

struct AggregateRow {
  int sweep_value = 0;
  Algorithm algorithm = Algorithm::Usc;
  int n_ok = 0;
  MetricValues mean;
  MetricValues stddev;  // sample standard deviation, 0 when n_ok == 1
};

struct ResultsTable {
  std::string sweep_axis_name;
  std::vector<TrialRow> trials;
  std::vector<AggregateRow> aggregates;
};

/// Runs every (sweep value, algorithm, trial) cell. Trial seeds are
/// base_seed + trial index; within a trial, graph sampling and k-means use
/// seeds derived from separate streams. Trials run in parallel; rows come
/// back in (sweep value, algorithm, trial) order regardless. Per-trial
/// algorithm failures (rank-infeasible, isolated nodes, ...) are recorded in
/// the row status, not raised.
ResultsTable run_experiment(const ExperimentConfig& config);

/// Deterministic CSVs: every float is printed with "%.17g", so identical
/// configs produce byte-identical files. Wall times are kept out of the
/// trial table (they vary run to run) and written to a companion file.
void write_trial_csv(const ResultsTable& table, std::ostream& out);
void write_aggregate_csv(const ResultsTable& table, std::ostream& out);
void write_timing_csv(const ResultsTable& table, std::ostream& out);

std::string aggregate_path_for(const std::string& trial_path);
std::string timing_path_for(const std::string& trial_path);

/// Writes the trial table to trial_path and the aggregate/timing companions
/// next to it.
void write_results_files(const ResultsTable& table, const std::string& trial_path);

}  // namespace repsc
