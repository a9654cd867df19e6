#include "repsc/kmeans.hpp"

#include <cmath>
#include <limits>

#include "repsc/errors.hpp"
#include "repsc/rng.hpp"

namespace repsc {

void KMeansConfig::validate() const {
  if (n_clusters < 1) throw InvalidConfigError("k-means needs at least one cluster");
  if (n_restarts < 1) throw InvalidConfigError("k-means needs at least one restart");
  if (max_iterations < 1) throw InvalidConfigError("k-means needs at least one iteration");
  if (convergence_tol < 0.0) throw InvalidConfigError("convergence tolerance must be nonnegative");
}

namespace {

struct LloydState {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double inertia = 0.0;
  std::vector<double> history;
};

// dist2(i, k) = |x_i|^2 + |c_k|^2 - 2 x_i . c_k, clamped at zero.
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& points, const Eigen::VectorXd& point_sq,
                                  const Eigen::MatrixXd& centroids) {
  Eigen::VectorXd centroid_sq = centroids.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = (-2.0 * points * centroids.transpose());
  d2.colwise() += point_sq;
  d2.rowwise() += centroid_sq.transpose();
  return d2.cwiseMax(0.0);
}

Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd centroids(k, points.cols());
  centroids.row(0) = points.row(rng.uniform_index(n));
  Eigen::VectorXd d2 =
      (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int pick;
    if (total <= 0.0) {
      pick = static_cast<int>(rng.uniform_index(n));
    } else {
      const double target = rng.uniform() * total;
      double cum = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        cum += d2(i);
        if (cum > target) {
          pick = i;
          break;
        }
      }
    }
    centroids.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

// Moves the point farthest from its centroid (from a cluster that can spare
// one) into each empty cluster, lowest empty index first.
void repair_empty_clusters(const Eigen::MatrixXd& d2, std::vector<int>& labels,
                           std::vector<int>& counts) {
  const int n = static_cast<int>(labels.size());
  const int k = static_cast<int>(counts.size());
  for (int c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    int donor = -1;
    double worst = -1.0;
    for (int i = 0; i < n; ++i) {
      if (counts[labels[i]] < 2) continue;
      const double dist = d2(i, labels[i]);
      if (dist > worst) {
        worst = dist;
        donor = i;
      }
    }
    if (donor < 0) continue;  // cannot happen when N >= K
    --counts[labels[donor]];
    labels[donor] = c;
    ++counts[c];
  }
}

LloydState run_lloyd(const Eigen::MatrixXd& points, const Eigen::VectorXd& point_sq,
                     const KMeansConfig& config, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  const int k = config.n_clusters;

  LloydState state;
  state.centroids = seed_centroids(points, k, rng);
  state.labels.assign(n, 0);

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    Eigen::MatrixXd d2 = squared_distances(points, point_sq, state.centroids);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = d2(i, 0);
      for (int c = 1; c < k; ++c) {
        if (d2(i, c) < best_d) {
          best_d = d2(i, c);
          best = c;
        }
      }
      state.labels[i] = best;
      ++counts[best];
    }
    repair_empty_clusters(d2, state.labels, counts);

    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, points.cols());
    for (int i = 0; i < n; ++i) means.row(state.labels[i]) += points.row(i);
    for (int c = 0; c < k; ++c) means.row(c) /= static_cast<double>(counts[c]);

    double inertia = 0.0;
    for (int i = 0; i < n; ++i)
      inertia += (points.row(i) - means.row(state.labels[i])).squaredNorm();
    state.history.push_back(inertia);
    state.inertia = inertia;

    const double movement = (means - state.centroids).rowwise().norm().maxCoeff();
    state.centroids = std::move(means);
    if (movement <= config.convergence_tol) break;
  }
  return state;
}

}  // namespace

KMeansResult cluster_rows(const Eigen::MatrixXd& points, const KMeansConfig& config) {
  config.validate();
  const int n = static_cast<int>(points.rows());
  if (n < config.n_clusters)
    throw InvalidConfigError("k-means needs at least as many points as clusters");

  Eigen::VectorXd point_sq = points.rowwise().squaredNorm();

  LloydState best;
  int best_restart = -1;
  for (int restart = 0; restart < config.n_restarts; ++restart) {
    Rng rng(Rng::derive(config.seed, static_cast<std::uint64_t>(restart)));
    LloydState state = run_lloyd(points, point_sq, config, rng);
    if (best_restart < 0 || state.inertia < best.inertia) {
      best = std::move(state);
      best_restart = restart;
    }
  }

  KMeansResult result{ClusterAssignment(best.labels, config.n_clusters), best.inertia, best_restart,
                      std::move(best.history)};
  return result;
}

RowNormalizeResult normalize_rows(const Eigen::MatrixXd& points) {
  RowNormalizeResult out{points, 0};
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double norm = points.row(i).norm();
    if (norm > 1e-12)
      out.points.row(i) /= norm;
    else
      ++out.degenerate_rows;
  }
  return out;
}

}  // namespace repsc
