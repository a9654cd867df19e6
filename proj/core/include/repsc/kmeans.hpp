#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "repsc/graph.hpp"

namespace repsc {

struct KMeansConfig {
  int n_clusters = 2;
  int n_restarts = 50;
  int max_iterations = 300;
  double convergence_tol = 1e-9;  // on centroid movement
  std::uint64_t seed = 0;
  void validate() const;
};

struct KMeansResult {
  ClusterAssignment assignment;
  double inertia = 0.0;
  int best_restart = 0;
  /// Inertia after each Lloyd update of the winning restart (monotone
  /// non-increasing).
  std::vector<double> inertia_history;
};

/// Lloyd iterations with distance-squared-proportional seeding per restart.
/// Restarts draw from seeds derived as Rng::derive(seed, restart); the best
/// restart is the one with the lowest inertia, ties broken by the lowest
/// restart index. Empty clusters are repaired by re-seeding on the point
/// farthest from its centroid, so the returned assignment has no empty
/// cluster. Requires N >= K.
KMeansResult cluster_rows(const Eigen::MatrixXd& points, const KMeansConfig& config);

struct RowNormalizeResult {
  Eigen::MatrixXd points;
  /// Rows with norm <= 1e-12 are passed through unchanged and counted here.
  int degenerate_rows = 0;
};

/// Scales each row to unit Euclidean norm.
RowNormalizeResult normalize_rows(const Eigen::MatrixXd& points);

}  // namespace repsc
