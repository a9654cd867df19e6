#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace repsc {

/// Undirected unweighted graph over n nodes, stored as a dense symmetric
/// 0/1 adjacency matrix. Similarity graphs forbid self-loops; representation
/// graphs allow them. Immutable after construction.
class Graph {
 public:
  /// Validates symmetry, 0/1 entries and the self-loop policy.
  static Graph from_adjacency(Eigen::MatrixXd adjacency, bool allows_self_loops);

  /// Edge-less graph.
  Graph(int n_nodes, bool allows_self_loops);

  int n_nodes() const { return n_; }
  bool allows_self_loops() const { return allows_self_loops_; }
  const Eigen::MatrixXd& adjacency() const { return adj_; }
  bool has_edge(int i, int j) const { return adj_(i, j) != 0.0; }

  Eigen::VectorXd degrees() const { return adj_.rowwise().sum(); }

  /// Adjacency-set view: neighbor lists in ascending node order, for
  /// degree/cut counting without scanning the dense matrix repeatedly.
  std::vector<std::vector<int>> adjacency_sets() const;

 private:
  Graph() = default;
  int n_ = 0;
  bool allows_self_loops_ = false;
  Eigen::MatrixXd adj_;
};

/// Partition of n nodes into clusters 0..K-1. Labels are 0-based in memory;
/// conversions from/to the 1-based external convention are total.
class ClusterAssignment {
 public:
  ClusterAssignment(std::vector<int> labels_0based, int n_clusters);

  static ClusterAssignment from_labels_1based(const std::vector<int>& labels, int n_clusters);

  int n_nodes() const { return static_cast<int>(labels_.size()); }
  int n_clusters() const { return k_; }
  int label(int i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<int> labels_1based() const;

  /// Per-cluster node counts (length K; entries may be zero).
  std::vector<int> cluster_sizes() const;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// Equal-sized contiguous blocks: nodes (k*N/K)..((k+1)*N/K - 1) form
/// cluster k. Requires K >= 2 and K | N.
ClusterAssignment ground_truth_assignment(int n_nodes, int n_clusters);

/// Contiguous blocks with sizes differing by at most one, for node counts
/// that the group count does not divide.
ClusterAssignment near_equal_blocks(int n_nodes, int n_groups);

/// N x K one-hot membership matrix.
Eigen::MatrixXd indicator_matrix(const ClusterAssignment& assignment);

/// N x K matrix with entries 1/sqrt(|C_j|) on membership, so that
/// H^T H = I. Throws DegenerateClusterError on an empty cluster.
Eigen::MatrixXd h_matrix(const ClusterAssignment& assignment);

/// Volume-scaled variant: entries 1/sqrt(Vol(C_j)) on membership with
/// Vol(C_j) the sum of member degrees, so that T^T D T = I. Throws
/// DegenerateClusterError on a zero-volume cluster.
Eigen::MatrixXd t_matrix(const ClusterAssignment& assignment, const Eigen::VectorXd& degrees);

/// Edge-list text format: one "i j" pair per line, 1-based, each undirected
/// edge listed once; '#' lines are comments. An optional "# nodes=N" comment
/// (emitted by write_edge_list) pins N; otherwise N is inferred from the
/// largest id, or taken from n_nodes_hint when >= 0. Self-loops are rejected
/// unless allows_self_loops.
Graph read_edge_list(std::istream& in, bool allows_self_loops, int n_nodes_hint = -1);
Graph read_edge_list_file(const std::string& path, bool allows_self_loops, int n_nodes_hint = -1);
void write_edge_list(const Graph& graph, std::ostream& out);
void write_edge_list_file(const Graph& graph, const std::string& path);

/// Labels file: one "i label" pair per line, both 1-based.
ClusterAssignment read_labels_file(const std::string& path, int n_clusters_hint = -1);
void write_labels_file(const ClusterAssignment& assignment, const std::string& path);

}  // namespace repsc
