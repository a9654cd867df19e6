#pragma once

#include <Eigen/Dense>
#include <vector>

#include "repsc/graph.hpp"

namespace repsc {

/// Per-node balance: rho_i = min over cluster pairs (k, l) of
/// |C_k cap N_R(i)| / |C_l cap N_R(i)|, with the convention 0/0 = 1 (so a
/// node with no representatives at all scores 1, and a node with
/// representatives in some cluster but none in another scores 0).
struct BalanceReport {
  Eigen::VectorXd per_node;
  double average = 0.0;
};

BalanceReport node_balance(const Graph& representation, const ClusterAssignment& assignment);

/// Deviation from proportional representation: max over nodes i and
/// clusters k of | |C_k cap N_R(i)| / |C_k| - |N_R(i)| / N |.
struct ConstraintCheck {
  bool satisfied = false;
  double max_deviation = 0.0;
};

ConstraintCheck representation_constraint_satisfied(const Graph& representation,
                                                    const ClusterAssignment& assignment,
                                                    double tolerance);

/// Same deviation in node units: max over (i, k) of
/// | |C_k cap N_R(i)| - |N_R(i)| |C_k| / N |.
double constraint_deviation_nodes(const Graph& representation, const ClusterAssignment& assignment);

/// Sum over clusters of (crossing edge count) / |C_k|. Throws
/// DegenerateClusterError on an empty cluster.
double ratio_cut(const Graph& similarity, const ClusterAssignment& assignment);

/// Sum over clusters of (crossing edge count) / Vol(C_k). Throws
/// DegenerateClusterError on a zero-volume cluster.
double normalized_cut(const Graph& similarity, const ClusterAssignment& assignment);

/// Misclustering against a reference partition, minimized over cluster
/// relabelings (optimal assignment on the K x K confusion matrix).
/// fraction follows the indicator-matrix zero-norm convention and equals
/// 2 * (misassigned nodes) / N; accuracy = 1 - (misassigned nodes) / N.
struct Misclustering {
  double fraction = 0.0;
  double accuracy = 1.0;
  /// best_permutation[j] = reference cluster matched to predicted cluster j.
  std::vector<int> best_permutation;
};

Misclustering misclustering(const ClusterAssignment& truth, const ClusterAssignment& predicted);

}  // namespace repsc
