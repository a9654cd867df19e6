#pragma once

#include <cstdint>

#include "repsc/graph.hpp"

namespace repsc {

/// Edge probabilities of the representation-aware block model. An edge
/// between nodes i and j is sampled with probability
///   p  if same cluster and R_ij = 1,
///   q  if different cluster and R_ij = 1,
///   r  if same cluster and R_ij = 0,
///   s  otherwise,
/// with 1 >= p >= q >= r >= s >= 0.
struct RsbmParams {
  double p = 0.4;
  double q = 0.3;
  double r = 0.2;
  double s = 0.1;
  void validate() const;
};

/// Group-SBM settings for sampling representation graphs.
struct ProtectedGroupParams {
  int n_groups = 5;
  double p_in = 0.8;
  double p_out = 0.2;
  void validate() const;
};

/// Deterministic d-regular representation graph with self-loops: every node
/// has exactly degree/K neighbors (counting its own self-loop) in each of
/// the K equal-sized ground-truth clusters.
///
/// Every cluster-pair block is circulant over within-cluster ranks: a node
/// of rank a links to ranks a+o (mod N/K) for o in the pair's offset set.
/// The base set is {0, +-1, ..., +-(t-1)/2} for odd t = degree/K and
/// {0, +-1, ..., +-(t/2-1), (N/K)/2} for even t (even t therefore needs an
/// even block size N/K); own-cluster blocks use it directly (0 gives the
/// self-loop) and each cross-cluster pair uses a multiplicatively dilated
/// copy with a pair-specific stride coprime to N/K. Distinct strides keep
/// the constraint operator's null space slim, which is what lets the
/// constrained pipelines suppress sampling noise; only the per-cluster
/// counts matter to consumers, and any construction with these counts is
/// admissible.
///
/// Requires K | N, K | degree, K <= degree <= N and the parity condition
/// above; violations throw InvalidConfigError.
Graph make_d_regular_representation(int n_nodes, int n_clusters, int degree,
                                    const ClusterAssignment& ground_truth);

/// Samples a similarity graph conditioned on a representation graph: each
/// upper-triangle pair draws one uniform variate in row-major order, so the
/// result is bit-identical for identical seeds. No self-loops.
Graph sample_rsbm(const Graph& representation, const ClusterAssignment& ground_truth,
                  const RsbmParams& params, std::uint64_t seed);

/// Samples a representation graph from a plain SBM over protected groups
/// (p_in within a group, p_out across). Self-loops are forced to 1 so every
/// node represents itself.
Graph sample_group_representation(int n_nodes, const ClusterAssignment& ground_truth_groups,
                                  const ProtectedGroupParams& params, std::uint64_t seed);

/// Union of disjoint cliques with self-loops: R_ij = 1 iff i and j share a
/// group. With this representation graph the representation constraint is
/// exactly group-proportional (statistical) fairness.
Graph block_diagonal_representation(const ClusterAssignment& groups);

}  // namespace repsc
