#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "repsc/graph.hpp"
#include "repsc/rng.hpp"

namespace repsc::testing {

inline Graph random_graph(int n, double edge_prob, Rng& rng) {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < edge_prob) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;
      }
  return Graph::from_adjacency(std::move(adj), false);
}

inline ClusterAssignment random_assignment(int n, int k, Rng& rng) {
  for (;;) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(rng.uniform_index(k));
    ClusterAssignment assignment(labels, k);
    const auto sizes = assignment.cluster_sizes();
    if (*std::min_element(sizes.begin(), sizes.end()) > 0) return assignment;
  }
}

/// Independent misclustering oracle: minimum mistakes over all K!
/// relabelings of the prediction, by enumeration.
inline int brute_force_mistakes(const ClusterAssignment& truth, const ClusterAssignment& predicted) {
  const int n = truth.n_nodes();
  const int k = truth.n_clusters();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  int best = n + 1;
  do {
    int mistakes = 0;
    for (int i = 0; i < n; ++i)
      if (truth.label(i) != perm[predicted.label(i)]) ++mistakes;
    best = std::min(best, mistakes);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Hand-built 24-node representation graph mirroring the paper's introductory
// example: every node has 6 representatives (self-loop included), exactly 3
// in each of the two planted clusters, and 5 of the 6 on its own "side"
// (protected group). Planted clusters are the contiguous blocks {0..11} and
// {12..23}; the sides are {0..5, 12..17} and {6..11, 18..23}.
//
// Within each side, the two 6-node halves carry a +-1 ring (self-loops
// included) plus a 2-regular bipartite band between the halves; a perfect
// matching connects the sides. Per node: 1 self + 2 ring + 2 band + 1
// matching = 6 representatives, split 3/3 across the planted clusters.

inline Graph example_representation_graph() {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(24, 24);
  auto link = [&](int a, int b) {
    adj(a, b) = 1.0;
    adj(b, a) = 1.0;
  };
  for (int i = 0; i < 24; ++i) adj(i, i) = 1.0;
  for (int j = 0; j < 6; ++j) {
    const int jn = (j + 1) % 6;
    link(j, jn);            // ring within {0..5}
    link(6 + j, 6 + jn);    // ring within {6..11}
    link(12 + j, 12 + jn);  // ring within {12..17}
    link(18 + j, 18 + jn);  // ring within {18..23}
    link(j, 12 + j);        // band inside side 1
    link(j, 12 + jn);
    link(6 + j, 18 + j);  // band inside side 2
    link(6 + j, 18 + jn);
    link(j, 18 + j);      // matching across sides
    link(6 + j, 12 + j);  // matching across sides
  }
  return Graph::from_adjacency(std::move(adj), true);
}

inline ClusterAssignment example_ground_truth() { return ground_truth_assignment(24, 2); }

inline ClusterAssignment example_sides() {
  std::vector<int> labels(24, 1);
  for (int j = 0; j < 6; ++j) {
    labels[j] = 0;
    labels[12 + j] = 0;
  }
  return ClusterAssignment(labels, 2);
}

/// A statistically fair split (6 nodes of each side per cluster) in which
/// node 0 has five of its six representatives {0,1,5,12,13,18} in cluster 0
/// and only node 18 in cluster 1, so its balance is 1/5.
inline ClusterAssignment example_unfair_clustering() {
  std::vector<int> labels(24, 1);
  for (int i : {0, 1, 2, 5, 12, 13, 6, 7, 8, 19, 20, 21}) labels[i] = 0;
  return ClusterAssignment(labels, 2);
}

}  // namespace repsc::testing
