#pragma once

#include <Eigen/Dense>
#include <vector>

#include "repsc/graph.hpp"
#include "repsc/rsbm.hpp"

namespace repsc {

/// Expected (population) adjacency of the representation-aware block model
/// for a d-regular representation graph with equal-sized clusters. The
/// variant with diagonal carries p on the diagonal; the plain one is hollow.
/// The expected degree is uniform and the leading/cluster eigenvalues come
/// from the closed forms below (cross-checked against the matrix itself at
/// construction; a mismatch beyond 1e-9 means the representation graph does
/// not have the assumed regular structure and raises InvalidConfigError).
struct PopulationModel {
  Eigen::MatrixXd expected_adjacency;                // zero diagonal
  Eigen::MatrixXd expected_adjacency_with_diagonal;  // diagonal = p
  double expected_degree = 0.0;                      // leading_eigenvalue - p
  double leading_eigenvalue = 0.0;
  double cluster_eigenvalue = 0.0;  // shared by the K-1 cluster directions
  std::vector<Eigen::VectorXd> cluster_projectors;  // diagonal 0/1 masks, sum to ones
  int representation_degree = 0;
};

PopulationModel expected_adjacency(const Graph& representation, const ClusterAssignment& ground_truth,
                                   const RsbmParams& params);

/// Closed forms for the leading eigenvalue (all-ones direction) and the
/// shared eigenvalue of the cluster-contrast directions:
///   leading = q d + s (N - d) + (p - q) d/K + (r - s)(N - d)/K
///   cluster = (p - q) d/K + (r - s)(N - d)/K
struct ClosedFormEigenvalues {
  double leading = 0.0;
  double cluster = 0.0;
};
ClosedFormEigenvalues closed_form_eigenvalues(const RsbmParams& params, int n_nodes, int n_clusters,
                                              int degree);

/// One-vs-rest contrast vectors: entry 1 on cluster k, -1/(K-1) elsewhere,
/// for k = 0..K-2 (columns). With block clusters these lie in the constraint
/// null space of any representation graph satisfying the regularity
/// assumption.
Eigen::MatrixXd cluster_contrast_vectors(int n_nodes, int n_clusters);

/// Orthonormal piecewise-constant basis of the cluster-indicator span:
/// column 0 is 1/sqrt(N), column k (k >= 1) is the Gram-Schmidt form that is
/// zero before block k, (K-k)/sqrt((N/K)(K-k)(K-k+1)) on block k and
/// -1/sqrt((N/K)(K-k)(K-k+1)) after it.
Eigen::MatrixXd canonical_cluster_basis(int n_nodes, int n_clusters);

/// Eigengap of the constrained population operator Y^T L Y (or its
/// degree-normalized version, which for the population model is the same
/// operator divided by expected_degree). scaling_ratio relates the gap to
/// the consistency threshold scale: gamma^2 / (p N K ln N) for the
/// unnormalized variant and gamma^2 (lambda_1 - p)^2 / (p N K ln N) for the
/// normalized one; weak consistency wants it large.
struct EigengapReport {
  double gamma = 0.0;  // NaN when the null space has exactly K dimensions
  double scaling_ratio = 0.0;
  Eigen::VectorXd spectrum_prefix;  // smallest eigenvalues, ascending
  double leading_eigenvalue = 0.0;
  int null_dimension = 0;
};

EigengapReport population_eigengap(const Graph& representation, const ClusterAssignment& ground_truth,
                                   const RsbmParams& params, bool normalized);

}  // namespace repsc
