#include "repsc/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "repsc/errors.hpp"
#include "repsc/spectral.hpp"

namespace repsc {

namespace {

// Uniform row sum of a binary matrix; -1 when rows disagree.
int uniform_degree(const Eigen::MatrixXd& adjacency) {
  Eigen::VectorXd sums = adjacency.rowwise().sum();
  const double first = sums(0);
  if ((sums.array() - first).abs().maxCoeff() > 0.0) return -1;
  return static_cast<int>(std::lround(first));
}

}  // namespace

ClosedFormEigenvalues closed_form_eigenvalues(const RsbmParams& params, int n_nodes, int n_clusters,
                                              int degree) {
  params.validate();
  if (n_clusters < 2 || n_nodes % n_clusters != 0 || degree % n_clusters != 0)
    throw InvalidConfigError("closed forms need K >= 2, K | N and K | d");
  const double n = n_nodes, k = n_clusters, d = degree;
  ClosedFormEigenvalues out;
  out.cluster = (params.p - params.q) * d / k + (params.r - params.s) * (n - d) / k;
  out.leading = params.q * d + params.s * (n - d) + out.cluster;
  return out;
}

PopulationModel expected_adjacency(const Graph& representation, const ClusterAssignment& ground_truth,
                                   const RsbmParams& params) {
  params.validate();
  const int n = representation.n_nodes();
  if (ground_truth.n_nodes() != n)
    throw InvalidConfigError("representation graph and assignment disagree on N");
  const int k = ground_truth.n_clusters();
  const auto& rep = representation.adjacency();

  // Route 1: entrywise case analysis on (same cluster, linked in R).
  Eigen::MatrixXd cases(n, n);
  for (int i = 0; i < n; ++i) {
    cases(i, i) = params.p;
    for (int j = i + 1; j < n; ++j) {
      const bool same = ground_truth.label(i) == ground_truth.label(j);
      const bool linked = rep(i, j) != 0.0;
      const double prob = same ? (linked ? params.p : params.r) : (linked ? params.q : params.s);
      cases(i, j) = prob;
      cases(j, i) = prob;
    }
  }

  // Route 2: q R + s (J - R) + (p-q) sum_k G_k R G_k + (r-s) sum_k G_k (J-R) G_k,
  // with G_k the diagonal cluster projectors; blocks are masked directly.
  Eigen::MatrixXd decomposition =
      params.q * rep + params.s * (Eigen::MatrixXd::Ones(n, n) - rep);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ground_truth.label(i) == ground_truth.label(j)) {
        decomposition(i, j) += (params.p - params.q) * rep(i, j) +
                               (params.r - params.s) * (1.0 - rep(i, j));
      }

  // Compare off-diagonal entries of the two routes (the diagonal convention
  // is imposed afterwards).
  double mismatch = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) mismatch = std::max(mismatch, std::abs(cases(i, j) - decomposition(i, j)));
  if (mismatch > 1e-12)
    throw InvalidConfigError("expected adjacency routes disagree by " + std::to_string(mismatch));

  PopulationModel model;
  model.expected_adjacency_with_diagonal = std::move(cases);
  model.expected_adjacency = model.expected_adjacency_with_diagonal;
  model.expected_adjacency.diagonal().setZero();

  const int d = uniform_degree(rep);
  if (d < 0) throw InvalidConfigError("representation graph is not regular (row sums differ)");
  model.representation_degree = d;

  const auto closed = closed_form_eigenvalues(params, n, k, d);
  model.leading_eigenvalue = closed.leading;
  model.cluster_eigenvalue = closed.cluster;
  model.expected_degree = closed.leading - params.p;

  // The closed form assumes d/K representatives per cluster; row sums of the
  // expected adjacency expose any violation.
  Eigen::VectorXd row_sums = model.expected_adjacency.rowwise().sum();
  const double row_err = (row_sums.array() - model.expected_degree).abs().maxCoeff();
  if (row_err > 1e-9)
    throw InvalidConfigError("expected adjacency row sums deviate from the closed form by " +
                             std::to_string(row_err) + "; representation graph violates the regularity assumption");

  model.cluster_projectors.reserve(k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd mask = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (ground_truth.label(i) == c) mask(i) = 1.0;
    model.cluster_projectors.push_back(std::move(mask));
  }
  return model;
}

Eigen::MatrixXd cluster_contrast_vectors(int n_nodes, int n_clusters) {
  const auto gt = ground_truth_assignment(n_nodes, n_clusters);
  Eigen::MatrixXd u(n_nodes, n_clusters - 1);
  for (int k = 0; k < n_clusters - 1; ++k)
    for (int i = 0; i < n_nodes; ++i)
      u(i, k) = gt.label(i) == k ? 1.0 : -1.0 / (n_clusters - 1);
  return u;
}

Eigen::MatrixXd canonical_cluster_basis(int n_nodes, int n_clusters) {
  if (n_clusters < 2 || n_nodes % n_clusters != 0)
    throw InvalidConfigError("canonical basis needs K >= 2 and K | N");
  const int block = n_nodes / n_clusters;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n_nodes, n_clusters);
  y.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n_nodes)));
  for (int k = 1; k < n_clusters; ++k) {
    const double kk = n_clusters - k;
    const double scale = 1.0 / std::sqrt(block * kk * (kk + 1.0));
    for (int i = 0; i < n_nodes; ++i) {
      const int c = i / block;  // 0-based block index
      if (c < k - 1)
        y(i, k) = 0.0;
      else if (c == k - 1)
        y(i, k) = kk * scale;
      else
        y(i, k) = -scale;
    }
  }
  return y;
}

EigengapReport population_eigengap(const Graph& representation, const ClusterAssignment& ground_truth,
                                   const RsbmParams& params, bool normalized) {
  auto model = expected_adjacency(representation, ground_truth, params);
  const int n = representation.n_nodes();
  const int k = ground_truth.n_clusters();

  // Population Laplacian: D = expected_degree * I, so
  // L = lambda_1 I - (expected adjacency with diagonal).
  Eigen::MatrixXd pop_laplacian =
      model.leading_eigenvalue * Eigen::MatrixXd::Identity(n, n) - model.expected_adjacency_with_diagonal;

  auto null_basis = constraint_null_basis(representation);
  const int null_dim = static_cast<int>(null_basis.basis.cols());
  if (null_dim < k)
    throw RankInfeasibleError("constraint null space has " + std::to_string(null_dim) +
                              " dimensions, fewer than K=" + std::to_string(k));

  Eigen::MatrixXd reduced = null_basis.basis.transpose() * pop_laplacian * null_basis.basis;
  reduced = 0.5 * (reduced + reduced.transpose());
  if (normalized) reduced /= model.expected_degree;  // Q = sqrt(lambda_1 - p) I

  const int want = std::min(null_dim, k + 2);
  auto pairs = smallest_eigenpairs(reduced, want);

  EigengapReport report;
  report.null_dimension = null_dim;
  report.leading_eigenvalue = model.leading_eigenvalue;
  report.spectrum_prefix = pairs.values;
  report.gamma = null_dim > k ? pairs.values(k) - pairs.values(k - 1)
                              : std::numeric_limits<double>::quiet_NaN();

  const double log_n = std::log(static_cast<double>(n));
  const double threshold_scale = params.p * n * k * log_n;
  double gamma_for_ratio = report.gamma;
  if (normalized) gamma_for_ratio *= model.expected_degree;
  report.scaling_ratio = gamma_for_ratio * gamma_for_ratio / threshold_scale;
  return report;
}

}  // namespace repsc
