#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "repsc/errors.hpp"
#include "repsc/experiment.hpp"
#include "repsc/multiplex.hpp"

using namespace repsc;

TEST_SUITE_BEGIN("experiment");

namespace {

const char* kTinyConfig = R"(
# smoke sweep
[experiment]
kind = d_regular_sweep
sweep_axis = n_nodes
sweep_values = 24
n_trials = 1
base_seed = 7
algorithms = usc
output = smoke.csv
threads = 1

[model]
n_clusters = 2
degree = 6
p = 0.9
q = 0.3
r = 0.25
s = 0.05
)";

ExperimentConfig tiny_config() {
  std::istringstream in(kTinyConfig);
  return parse_experiment_config(in);
}

std::string trial_csv(const ResultsTable& table) {
  std::ostringstream out;
  write_trial_csv(table, out);
  return out.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/repsc_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("config parsing") {
  auto config = tiny_config();
  CHECK(config.kind == ExperimentKind::DRegularSweep);
  CHECK(config.sweep_axis == SweepAxis::NNodes);
  CHECK(config.sweep_values == std::vector<int>{24});
  CHECK(config.n_trials == 1);
  CHECK(config.base_seed == 7);
  CHECK(config.algorithms == std::vector<Algorithm>{Algorithm::Usc});
  CHECK(config.output_path == "smoke.csv");
  CHECK(config.rsbm.p == 0.9);
  CHECK(config.n_clusters == 2);
}

TEST_CASE("config errors name the offending field") {
  SUBCASE("unknown key") {
    std::istringstream in("[experiment]\nbogus = 3\n");
    try {
      parse_experiment_config(in);
      FAIL("expected a config error");
    } catch (const InvalidConfigError& e) {
      CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
  }
  SUBCASE("bad integer") {
    std::istringstream in("[experiment]\nn_trials = many\n");
    try {
      parse_experiment_config(in);
      FAIL("expected a config error");
    } catch (const InvalidConfigError& e) {
      CHECK(std::string(e.what()).find("n_trials") != std::string::npos);
    }
  }
  SUBCASE("unknown algorithm token") {
    std::istringstream in("[experiment]\nalgorithms = usc, warp\n");
    CHECK_THROWS_AS(parse_experiment_config(in), InvalidConfigError);
  }
  SUBCASE("sweep-point divisibility is validated up front") {
    auto config = tiny_config();
    config.sweep_values = {25};  // K = 2 does not divide 25
    try {
      config.validate();
      FAIL("expected a config error");
    } catch (const InvalidConfigError& e) {
      CHECK(std::string(e.what()).find("n_clusters") != std::string::npos);
      CHECK(std::string(e.what()).find("25") != std::string::npos);
    }
  }
}

TEST_CASE("smoke run produces one row per cell") {
  auto config = tiny_config();
  auto table = run_experiment(config);
  REQUIRE(table.trials.size() == 1);
  const auto& row = table.trials[0];
  CHECK(row.status == "ok");
  CHECK(row.sweep_value == 24);
  CHECK(row.seed == 7);
  CHECK(row.metrics.accuracy.has_value());
  CHECK(row.metrics.ratio_cut.has_value());
  CHECK(row.metrics.avg_balance.has_value());
  REQUIRE(table.aggregates.size() == 1);
  CHECK(table.aggregates[0].n_ok == 1);
}

TEST_CASE("determinism: identical configs give byte-identical trial tables") {
  auto config = tiny_config();
  config.algorithms = {Algorithm::Usc, Algorithm::Urepsc};
  config.n_trials = 2;
  auto first = trial_csv(run_experiment(config));
  auto second = trial_csv(run_experiment(config));
  CHECK(first == second);

  SUBCASE("thread count does not change the table") {
    config.threads = 4;
    CHECK(trial_csv(run_experiment(config)) == first);
  }
}

TEST_CASE("aggregates equal the arithmetic mean of their rows") {
  auto config = tiny_config();
  config.n_trials = 3;
  config.algorithms = {Algorithm::Urepsc};
  auto table = run_experiment(config);
  REQUIRE(table.trials.size() == 3);
  REQUIRE(table.aggregates.size() == 1);
  double mean = 0.0;
  for (const auto& row : table.trials) mean += *row.metrics.accuracy;
  mean /= 3.0;
  CHECK(*table.aggregates[0].mean.accuracy == doctest::Approx(mean).epsilon(1e-15));
}

TEST_CASE("per-trial algorithm failures become row statuses") {
  auto config = tiny_config();
  config.algorithms = {Algorithm::Ufairsc, Algorithm::Usc};
  config.groups.n_groups = 24;  // every node its own group: rank infeasible
  auto table = run_experiment(config);
  REQUIRE(table.trials.size() == 2);
  CHECK(table.trials[0].algorithm == Algorithm::Usc);
  CHECK(table.trials[0].status == "ok");
  CHECK(table.trials[1].algorithm == Algorithm::Ufairsc);
  CHECK(table.trials[1].status == "rank_infeasible");
  CHECK_FALSE(table.trials[1].metrics.accuracy.has_value());
}

TEST_CASE("canonical algorithm order in the output") {
  auto config = tiny_config();
  config.algorithms = {Algorithm::Urepsc, Algorithm::Usc};  // reversed on purpose
  auto table = run_experiment(config);
  REQUIRE(table.trials.size() == 2);
  CHECK(table.trials[0].algorithm == Algorithm::Usc);
  CHECK(table.trials[1].algorithm == Algorithm::Urepsc);
}

TEST_CASE("csv headers are stable") {
  auto table = run_experiment(tiny_config());
  std::ostringstream out;
  write_trial_csv(table, out);
  std::string header = out.str().substr(0, out.str().find('\n'));
  CHECK(header ==
        "sweep_axis,sweep_value,algorithm,trial,seed,status,accuracy,misclustering,avg_balance,"
        "ratio_cut,normalized_cut,balance_over_rcut,eigengap,constraint_residual");

  CHECK(aggregate_path_for("x/results.csv") == "x/results_aggregate.csv");
  CHECK(timing_path_for("x/results.csv") == "x/results_timing.csv");
}

TEST_CASE("sbm representation sweep runs") {
  std::istringstream in(R"(
[experiment]
kind = sbm_representation_sweep
sweep_axis = approx_rank
sweep_values = 2 4
n_trials = 2
base_seed = 1
algorithms = urepsc_approx
output = sbm.csv
threads = 2

[model]
n_nodes = 40
n_clusters = 2
n_groups = 5
p_in = 0.9
p_out = 0.1
p = 0.9
q = 0.4
r = 0.3
s = 0.05
)");
  auto config = parse_experiment_config(in);
  auto table = run_experiment(config);
  CHECK(table.trials.size() == 4);
  for (const auto& row : table.trials) {
    CHECK(row.status == "ok");
    CHECK(row.metrics.avg_balance.has_value());
    CHECK(row.metrics.balance_over_rcut.has_value());
  }
}

TEST_CASE("real multiplex experiment ingests and sweeps the rank") {
  // Two representation layers, one similarity layer, 8 nodes.
  std::ostringstream data;
  data << "# layer i j w\n";
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j) {
      const bool same_half = (i <= 4) == (j <= 4);
      data << "1 " << i << " " << j << " " << (same_half ? 2.0 : 0.5) << "\n";
      data << "3 " << i << " " << j << " " << (same_half ? 3.0 : 0.4) << "\n";
    }
  data << "2 1 2 1.0\n";  // layer 2 belongs to no range
  const std::string path = write_temp("multiplex.txt", data.str());

  std::istringstream in(
      "[experiment]\n"
      "kind = real_multiplex\n"
      "sweep_axis = approx_rank\n"
      "sweep_values = 2 3\n"
      "n_trials = 1\n"
      "base_seed = 3\n"
      "algorithms = urepsc_approx\n"
      "output = mux.csv\n"
      "threads = 1\n"
      "[model]\n"
      "n_clusters = 2\n"
      "[multiplex]\n"
      "file = " +
      path +
      "\n"
      "knn = 3\n"
      "representation_layers = 1 1\n"
      "similarity_layers = 3 3\n");
  auto config = parse_experiment_config(in);
  auto table = run_experiment(config);
  CHECK(table.trials.size() == 2);
  for (const auto& row : table.trials) {
    CHECK(row.status == "ok");
    // No planted truth: accuracy stays empty, balance is defined.
    CHECK_FALSE(row.metrics.accuracy.has_value());
    CHECK(row.metrics.avg_balance.has_value());
  }
  std::remove(path.c_str());
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("multiplex");

namespace {

std::string spec_file(const std::string& content) {
  static int counter = 0;
  std::string path = "/tmp/repsc_mux_" + std::to_string(counter++) + ".txt";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("per-node nearest neighbor selection then union symmetrization") {
  // w(1,2)=5, w(1,3)=1, w(2,3)=2 with knn=1: picks 1->2, 2->1, 3->2.
  const std::string path = spec_file("1 1 2 5\n1 1 3 1\n1 2 3 2\n2 1 2 1\n");
  MultiplexSpec spec{path, {1, 1}, {2, 2}, 1, -1};
  auto graphs = ingest_multiplex(spec);
  CHECK(graphs.representation.has_edge(0, 1));
  CHECK(graphs.representation.has_edge(1, 2));
  CHECK_FALSE(graphs.representation.has_edge(0, 2));
  CHECK(graphs.representation.has_edge(0, 0));  // self-loops added to R
  CHECK_FALSE(graphs.similarity.has_edge(0, 0));
  std::remove(path.c_str());
}

TEST_CASE("identical layers in a range are idempotent") {
  const std::string one = spec_file("1 1 2 5\n1 2 3 2\n3 1 3 1\n");
  const std::string two = spec_file("1 1 2 5\n1 2 3 2\n2 1 2 5\n2 2 3 2\n3 1 3 1\n");
  MultiplexSpec spec_one{one, {1, 1}, {3, 3}, 2, -1};
  MultiplexSpec spec_two{two, {1, 2}, {3, 3}, 2, -1};
  auto a = ingest_multiplex(spec_one);
  auto b = ingest_multiplex(spec_two);
  CHECK((a.representation.adjacency() - b.representation.adjacency()).cwiseAbs().maxCoeff() == 0.0);
  std::remove(one.c_str());
  std::remove(two.c_str());
}

TEST_CASE("weight ties break toward the lower node id") {
  const std::string path = spec_file("1 1 2 5\n1 1 3 5\n1 2 3 9\n2 1 2 1\n");
  MultiplexSpec spec{path, {1, 1}, {2, 2}, 1, -1};
  auto graphs = ingest_multiplex(spec);
  // Node 1 ties between 2 and 3 and must pick 2; nodes 2 and 3 pick each other.
  CHECK(graphs.representation.has_edge(0, 1));
  CHECK_FALSE(graphs.representation.has_edge(0, 2));
  CHECK(graphs.representation.has_edge(1, 2));
  std::remove(path.c_str());
}

TEST_CASE("parse errors carry line numbers") {
  const std::string path = spec_file("1 1 2 5\nnot a record\n");
  MultiplexSpec spec{path, {1, 1}, {2, 2}, 1, -1};
  try {
    ingest_multiplex(spec);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("empty layers in a range are counted") {
  const std::string path = spec_file("1 1 2 5\n4 1 2 5\n");
  MultiplexSpec spec{path, {1, 2}, {4, 4}, 1, -1};
  auto graphs = ingest_multiplex(spec);
  CHECK(graphs.empty_layers == 1);  // layer 2 contributed nothing
  std::remove(path.c_str());
}

TEST_CASE("layer ranges must be disjoint and sane") {
  MultiplexSpec overlapping{"x", {1, 3}, {2, 5}, 5, -1};
  CHECK_THROWS_AS(overlapping.validate(), InvalidConfigError);
  MultiplexSpec inverted{"x", {3, 1}, {4, 5}, 5, -1};
  CHECK_THROWS_AS(inverted.validate(), InvalidConfigError);
  MultiplexSpec bad_knn{"x", {1, 1}, {2, 2}, 0, -1};
  CHECK_THROWS_AS(bad_knn.validate(), InvalidConfigError);
}

TEST_CASE("declared node counts extend the graph") {
  const std::string path = spec_file("1 1 2 5\n2 1 2 1\n");
  MultiplexSpec spec{path, {1, 1}, {2, 2}, 1, 4};
  auto graphs = ingest_multiplex(spec);
  CHECK(graphs.representation.n_nodes() == 4);
  CHECK(graphs.representation.has_edge(3, 3));  // isolated node still represents itself
  std::remove(path.c_str());
}

TEST_SUITE_END();
