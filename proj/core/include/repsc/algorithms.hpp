#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>

#include "repsc/graph.hpp"
#include "repsc/kmeans.hpp"

namespace repsc {

/// Output of one clustering run: the partition, the embedding whose rows
/// were fed to k-means, the eigenvalues behind the embedding (ascending) and
/// named diagnostics ("eigengap", "constraint_residual", "inertia", ...).
struct ClusteringOutput {
  ClusterAssignment assignment;
  Eigen::MatrixXd embedding;
  Eigen::VectorXd eigenvalues;
  std::map<std::string, double> diagnostics;
};

/// Plain spectral clustering on the K smallest eigenvectors of L = D - A.
ClusteringOutput unnormalized_sc(const Eigen::MatrixXd& similarity, int n_clusters,
                                 const KMeansConfig& kmeans_config);
ClusteringOutput unnormalized_sc(const Graph& similarity, int n_clusters,
                                 const KMeansConfig& kmeans_config);

/// Spectral clustering on the normalized Laplacian with row-normalized
/// eigenvector rows. Requires min degree > 0.
ClusteringOutput normalized_sc(const Eigen::MatrixXd& similarity, int n_clusters,
                               const KMeansConfig& kmeans_config);
ClusteringOutput normalized_sc(const Graph& similarity, int n_clusters,
                               const KMeansConfig& kmeans_config);

/// Representation-aware spectral clustering: k-means on the rows of Y Z,
/// where Y spans the null space of R (I - 11^T/N) and Z holds the K smallest
/// eigenvectors of Y^T L Y. Throws RankInfeasibleError when the null space
/// has fewer than K dimensions.
ClusteringOutput urepsc(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& representation,
                        int n_clusters, const KMeansConfig& kmeans_config);
ClusteringOutput urepsc(const Graph& similarity, const Graph& representation, int n_clusters,
                        const KMeansConfig& kmeans_config);

/// Normalized variant: k-means on the rows of Y Q^{-1} V with
/// Q = sqrt(Y^T D Y) and V the K smallest eigenvectors of
/// Q^{-1} Y^T L Y Q^{-1}. Additionally requires min degree > 0.
ClusteringOutput nrepsc(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& representation,
                        int n_clusters, const KMeansConfig& kmeans_config);
ClusteringOutput nrepsc(const Graph& similarity, const Graph& representation, int n_clusters,
                        const KMeansConfig& kmeans_config);

/// Same pipelines with the representation matrix replaced by its best
/// rank-`approx_rank` approximation (for representation graphs whose
/// constraint operator leaves fewer than K null directions). Requires
/// 1 <= approx_rank <= N - K.
ClusteringOutput urepsc_approx(const Graph& similarity, const Graph& representation, int n_clusters,
                               int approx_rank, const KMeansConfig& kmeans_config);
ClusteringOutput nrepsc_approx(const Graph& similarity, const Graph& representation, int n_clusters,
                               int approx_rank, const KMeansConfig& kmeans_config);

/// Group-based baseline: recovers n_groups protected groups by clustering
/// the representation graph with plain spectral clustering, then runs the
/// representation-aware pipeline with the block-diagonal graph of those
/// groups. `normalized` selects the downstream variant; group discovery
/// always uses the unnormalized pipeline.
ClusteringOutput fairsc_baseline(const Graph& similarity, const Graph& representation, int n_clusters,
                                 int n_groups, const KMeansConfig& kmeans_config, bool normalized);

}  // namespace repsc
