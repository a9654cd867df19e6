#include <doctest.h>

#include "repsc/errors.hpp"
#include "repsc/metrics.hpp"
#include "repsc/rsbm.hpp"
#include "test_support.hpp"

using namespace repsc;
using namespace repsc::testing;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("balance on the 24-node example graph") {
  Graph rep = example_representation_graph();

  SUBCASE("planted clusters are perfectly balanced") {
    auto report = node_balance(rep, example_ground_truth());
    CHECK(report.per_node.minCoeff() == 1.0);
    CHECK(report.average == 1.0);
  }
  SUBCASE("the group-aligned split leaves node 0 with one representative") {
    auto report = node_balance(rep, example_unfair_clustering());
    CHECK(report.per_node(0) == doctest::Approx(0.2));
  }
  SUBCASE("Assumption-style counts hold (5 of 6 on the own side)") {
    auto sides = example_sides();
    const auto& adj = rep.adjacency();
    for (int i = 0; i < 24; ++i) {
      CHECK(adj.row(i).sum() == 6.0);
      int own = 0;
      for (int j = 0; j < 24; ++j)
        if (adj(i, j) != 0.0 && sides.label(j) == sides.label(i)) ++own;
      CHECK(own == 5);
    }
  }
}

TEST_CASE("balance edge cases") {
  // Node 0 has representatives only in cluster 0.
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(4, 4);
  adj(0, 0) = 1.0;
  adj(0, 1) = adj(1, 0) = 1.0;
  adj(1, 1) = 1.0;
  adj(2, 2) = 1.0;
  adj(3, 3) = 1.0;
  Graph rep = Graph::from_adjacency(adj, true);
  auto report = node_balance(rep, ClusterAssignment({0, 0, 1, 1}, 2));
  CHECK(report.per_node(0) == 0.0);

  // A complete representation graph balances every clustering exactly.
  Graph complete = block_diagonal_representation(ClusterAssignment({0, 0, 0, 0}, 1));
  auto full = node_balance(complete, ClusterAssignment({0, 0, 1, 1}, 2));
  CHECK(full.per_node.minCoeff() == 1.0);

  // No representatives at all: the 0/0 convention scores 1.
  Graph none(3, true);
  auto lonely = node_balance(none, ClusterAssignment({0, 1, 0}, 2));
  CHECK(lonely.per_node.maxCoeff() == 1.0);
  CHECK(lonely.per_node.minCoeff() == 1.0);
}

TEST_CASE("balance is invariant to cluster relabeling") {
  Graph rep = example_representation_graph();
  auto a = example_unfair_clustering();
  std::vector<int> flipped(a.labels());
  for (int& l : flipped) l = 1 - l;
  auto b = node_balance(rep, ClusterAssignment(flipped, 2));
  CHECK((node_balance(rep, a).per_node - b.per_node).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("representation constraint checks") {
  SUBCASE("regular representation with block clusters satisfies it exactly") {
    auto gt = ground_truth_assignment(24, 2);
    Graph rep = make_d_regular_representation(24, 2, 6, gt);
    auto check = representation_constraint_satisfied(rep, gt, 1e-9);
    CHECK(check.satisfied);
    CHECK(check.max_deviation == 0.0);
    CHECK(constraint_deviation_nodes(rep, gt) == 0.0);
  }
  SUBCASE("two representatives cannot be split across three clusters") {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(6, 6);
    adj(0, 0) = 1.0;
    adj(0, 1) = adj(1, 0) = 1.0;
    for (int i = 1; i < 6; ++i) adj(i, i) = 1.0;
    Graph rep = Graph::from_adjacency(adj, true);
    auto check = representation_constraint_satisfied(rep, ClusterAssignment({0, 0, 1, 1, 2, 2}, 3),
                                                     1e-9);
    CHECK_FALSE(check.satisfied);
    CHECK(check.max_deviation >= 1.0 / 6.0 - 1e-12);
  }
  SUBCASE("complete representation satisfies every clustering") {
    Graph complete = block_diagonal_representation(ClusterAssignment({0, 0, 0, 0, 0, 0}, 1));
    auto check = representation_constraint_satisfied(complete,
                                                     ClusterAssignment({0, 1, 0, 1, 0, 1}, 2), 1e-12);
    CHECK(check.satisfied);
  }
  SUBCASE("empty cluster is an error") {
    Graph rep(4, true);
    CHECK_THROWS_AS(
        representation_constraint_satisfied(rep, ClusterAssignment({0, 0, 0, 0}, 2), 1e-9),
        DegenerateClusterError);
  }
}

TEST_CASE("cut objectives") {
  SUBCASE("two cliques split correctly have zero cut") {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) {
          adj(i, j) = 1.0;
          adj(3 + i, 3 + j) = 1.0;
        }
    Graph g = Graph::from_adjacency(adj, false);
    auto split = ClusterAssignment({0, 0, 0, 1, 1, 1}, 2);
    CHECK(ratio_cut(g, split) == 0.0);
    CHECK(normalized_cut(g, split) == 0.0);
  }
  SUBCASE("single crossing edge scales with cluster sizes") {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(5, 5);
    adj(0, 2) = adj(2, 0) = 1.0;
    Graph g = Graph::from_adjacency(adj, false);
    auto split = ClusterAssignment({0, 0, 1, 1, 1}, 2);
    CHECK(ratio_cut(g, split) == doctest::Approx(1.0 / 2 + 1.0 / 3));
  }
  SUBCASE("degenerate clusters raise") {
    Graph g(4, false);
    CHECK_THROWS_AS(ratio_cut(g, ClusterAssignment({0, 0, 0, 0}, 2)), DegenerateClusterError);
    CHECK_THROWS_AS(normalized_cut(g, ClusterAssignment({0, 0, 1, 1}, 2)), DegenerateClusterError);
  }
}

TEST_CASE("misclustering basics") {
  auto truth = ClusterAssignment({0, 0, 0, 1, 1, 1}, 2);
  SUBCASE("exact match") {
    auto m = misclustering(truth, truth);
    CHECK(m.fraction == 0.0);
    CHECK(m.accuracy == 1.0);
  }
  SUBCASE("label swap is absorbed by the permutation") {
    auto swapped = ClusterAssignment({1, 1, 1, 0, 0, 0}, 2);
    CHECK(misclustering(truth, swapped).fraction == 0.0);
  }
  SUBCASE("one misplaced node") {
    auto predicted = ClusterAssignment({0, 0, 1, 1, 1, 1}, 2);
    auto m = misclustering(truth, predicted);
    CHECK(m.fraction == doctest::Approx(2.0 / 6.0));
    CHECK(m.accuracy == doctest::Approx(5.0 / 6.0));
  }
  SUBCASE("dimension checks") {
    CHECK_THROWS_AS(misclustering(truth, ClusterAssignment({0, 1, 2, 0, 1, 2}, 3)),
                    InvalidConfigError);
    CHECK_THROWS_AS(misclustering(truth, ClusterAssignment({0, 1}, 2)), InvalidConfigError);
  }
}

TEST_CASE("misclustering agrees with brute force enumeration") {
  Rng rng(71);
  for (int round = 0; round < 60; ++round) {
    const int k = 2 + static_cast<int>(rng.uniform_index(5));
    const int n = k + static_cast<int>(rng.uniform_index(40));
    auto truth = random_assignment(n, k, rng);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(rng.uniform_index(k));
    ClusterAssignment predicted(labels, k);
    const auto fast = misclustering(truth, predicted);
    const int expected = brute_force_mistakes(truth, predicted);
    CHECK(fast.fraction == doctest::Approx(2.0 * expected / n).epsilon(1e-12));
    CHECK(fast.accuracy == doctest::Approx(1.0 - double(expected) / n).epsilon(1e-12));
  }
}

TEST_CASE("equal-size clusters cap the balance at one") {
  Rng rng(83);
  for (int round = 0; round < 10; ++round) {
    Graph rep = random_graph(12, 0.5, rng);
    Eigen::MatrixXd with_loops = rep.adjacency();
    with_loops.diagonal().setOnes();
    Graph loops = Graph::from_adjacency(with_loops, true);
    auto blocks = ground_truth_assignment(12, 3);
    auto report = node_balance(loops, blocks);
    CHECK(report.per_node.maxCoeff() <= 1.0);
  }
}

TEST_SUITE_END();
