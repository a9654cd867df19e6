#include <doctest.h>

#include <sstream>

#include "repsc/errors.hpp"
#include "repsc/graph.hpp"
#include "repsc/spectral.hpp"
#include "test_support.hpp"

using namespace repsc;

TEST_SUITE_BEGIN("graph_core");

TEST_CASE("ground truth assignment forms contiguous equal blocks") {
  auto gt = ground_truth_assignment(24, 2);
  for (int i = 0; i < 12; ++i) CHECK(gt.label(i) == 0);
  for (int i = 12; i < 24; ++i) CHECK(gt.label(i) == 1);

  auto singletons = ground_truth_assignment(4, 4);
  for (int i = 0; i < 4; ++i) CHECK(singletons.label(i) == i);

  auto thirds = ground_truth_assignment(12, 3);
  CHECK(thirds.cluster_sizes() == std::vector<int>{4, 4, 4});
  CHECK(thirds.label(3) == 0);
  CHECK(thirds.label(4) == 1);
}

TEST_CASE("ground truth assignment rejects bad configurations") {
  CHECK_THROWS_AS(ground_truth_assignment(10, 3), InvalidConfigError);
  CHECK_THROWS_AS(ground_truth_assignment(10, 1), InvalidConfigError);
}

TEST_CASE("indicator matrix is one-hot with block column sums") {
  auto a = ClusterAssignment({0, 1}, 2);
  Eigen::MatrixXd theta = indicator_matrix(a);
  CHECK(theta(0, 0) == 1.0);
  CHECK(theta(1, 1) == 1.0);
  CHECK(theta.sum() == 2.0);

  auto b = ClusterAssignment({0, 0, 1}, 2);
  Eigen::VectorXd sums = indicator_matrix(b).colwise().sum();
  CHECK(sums(0) == 2.0);
  CHECK(sums(1) == 1.0);

  Eigen::VectorXd gt_sums = indicator_matrix(ground_truth_assignment(24, 2)).colwise().sum();
  CHECK(gt_sums(0) == 12.0);
  CHECK(gt_sums(1) == 12.0);
}

TEST_CASE("h matrix entries and orthonormality") {
  auto a = ClusterAssignment({0, 0, 1, 1}, 2);
  Eigen::MatrixXd h = h_matrix(a);
  for (int i = 0; i < 4; ++i) CHECK(h(i, a.label(i)) == doctest::Approx(1.0 / std::sqrt(2.0)));

  Eigen::MatrixXd hg = h_matrix(ground_truth_assignment(24, 2));
  CHECK(hg.cwiseAbs().maxCoeff() == doctest::Approx(1.0 / std::sqrt(12.0)));

  Rng rng(42);
  for (int round = 0; round < 20; ++round) {
    const int n = 6 + static_cast<int>(rng.uniform_index(20));
    const int k = 2 + static_cast<int>(rng.uniform_index(3));
    auto assignment = repsc::testing::random_assignment(n, k, rng);
    Eigen::MatrixXd hh = h_matrix(assignment);
    Eigen::MatrixXd gram = hh.transpose() * hh;
    CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("h matrix rejects empty clusters") {
  auto a = ClusterAssignment({0, 0, 0}, 2);
  CHECK_THROWS_AS(h_matrix(a), DegenerateClusterError);
}

TEST_CASE("t matrix satisfies T^T D T = I") {
  // 4-cycle: all degrees 2, volume 4 per cluster, entries 1/2.
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(4, 4);
  adj(0, 1) = adj(1, 0) = 1;
  adj(1, 2) = adj(2, 1) = 1;
  adj(2, 3) = adj(3, 2) = 1;
  adj(3, 0) = adj(0, 3) = 1;
  Graph cycle = Graph::from_adjacency(adj, false);
  auto a = ClusterAssignment({0, 0, 1, 1}, 2);
  Eigen::MatrixXd t = t_matrix(a, cycle.degrees());
  for (int i = 0; i < 4; ++i) CHECK(t(i, a.label(i)) == doctest::Approx(0.5));

  Rng rng(7);
  for (int round = 0; round < 20; ++round) {
    const int n = 8 + static_cast<int>(rng.uniform_index(16));
    Graph g = repsc::testing::random_graph(n, 0.5, rng);
    auto assignment = repsc::testing::random_assignment(n, 2, rng);
    Eigen::VectorXd deg = g.degrees();
    Eigen::VectorXd volumes = Eigen::VectorXd::Zero(2);
    for (int i = 0; i < n; ++i) volumes(assignment.label(i)) += deg(i);
    if (volumes.minCoeff() <= 0.0) continue;
    Eigen::MatrixXd t2 = t_matrix(assignment, deg);
    Eigen::MatrixXd gram = t2.transpose() * deg.asDiagonal() * t2;
    CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("uniform degrees reduce T to H/sqrt(d0)") {
    Eigen::VectorXd deg = Eigen::VectorXd::Constant(4, 2.0);
    Eigen::MatrixXd h = h_matrix(a);
    CHECK((t_matrix(a, deg) - h / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("t matrix rejects zero-volume clusters") {
  auto a = ClusterAssignment({0, 1, 1}, 2);
  Eigen::VectorXd deg(3);
  deg << 0.0, 2.0, 2.0;
  CHECK_THROWS_AS(t_matrix(a, deg), DegenerateClusterError);
}

TEST_CASE("matrix builders are permutation-equivariant in the cluster labels") {
  auto a = ClusterAssignment({0, 1, 2, 0, 1, 2}, 3);
  auto swapped = ClusterAssignment({2, 1, 0, 2, 1, 0}, 3);  // swap clusters 0 and 2
  Eigen::MatrixXd ha = h_matrix(a), hs = h_matrix(swapped);
  CHECK((ha.col(0) - hs.col(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ha.col(2) - hs.col(0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ha.col(1) - hs.col(1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph validation") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 0.5;
  bad(1, 0) = 0.5;
  CHECK_THROWS_AS(Graph::from_adjacency(bad, false), InvalidConfigError);

  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(Graph::from_adjacency(asym, false), InvalidConfigError);

  Eigen::MatrixXd loop = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(Graph::from_adjacency(loop, false), InvalidConfigError);
  CHECK_NOTHROW(Graph::from_adjacency(loop, true));
}

TEST_CASE("edge list round trip and parsing") {
  Graph rep = repsc::testing::example_representation_graph();
  std::ostringstream out;
  write_edge_list(rep, out);

  std::istringstream in(out.str());
  Graph back = read_edge_list(in, true);
  CHECK(back.n_nodes() == rep.n_nodes());
  CHECK((back.adjacency() - rep.adjacency()).cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("comments and node-count directives") {
    std::istringstream src("# a comment\n# nodes=5\n1 2\n\n4 5\n");
    Graph g = read_edge_list(src, false);
    CHECK(g.n_nodes() == 5);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(3, 4));
  }
  SUBCASE("self-loops rejected for similarity graphs") {
    std::istringstream src("1 2\n2 2\n");
    CHECK_THROWS_AS(read_edge_list(src, false), ParseError);
  }
  SUBCASE("malformed line reports its number") {
    std::istringstream src("1 2\nnope\n");
    try {
      read_edge_list(src, false);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("near-equal blocks cover all nodes with balanced sizes") {
  auto groups = near_equal_blocks(10, 3);
  auto sizes = groups.cluster_sizes();
  CHECK(sizes[0] + sizes[1] + sizes[2] == 10);
  CHECK(*std::max_element(sizes.begin(), sizes.end()) -
            *std::min_element(sizes.begin(), sizes.end()) <=
        1);
}

TEST_SUITE_END();
