#include "repsc/algorithms.hpp"

#include <limits>
#include <string>

#include "repsc/errors.hpp"
#include "repsc/rng.hpp"
#include "repsc/rsbm.hpp"
#include "repsc/spectral.hpp"

namespace repsc {

namespace {

void require_k(int n, int k) {
  if (k < 2) throw InvalidConfigError("clustering needs K >= 2");
  if (n < k) throw InvalidConfigError("clustering needs N >= K");
}

KMeansConfig with_k(const KMeansConfig& base, int k) {
  KMeansConfig cfg = base;
  cfg.n_clusters = k;
  return cfg;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// ||R (I - 11^T/N) E||_max for an embedding E; the projector subtracts the
// column means.
double constraint_residual(const Eigen::MatrixXd& representation, const Eigen::MatrixXd& embedding) {
  Eigen::RowVectorXd col_means = embedding.colwise().mean();
  Eigen::MatrixXd centered = embedding.rowwise() - col_means;
  return max_abs(representation * centered);
}

// Shared tail of every pipeline: k-means on the embedding rows plus the
// standard diagnostics.
ClusteringOutput finish(Eigen::MatrixXd embedding, Eigen::VectorXd eigenvalues,
                        std::map<std::string, double> diagnostics, const KMeansConfig& cfg) {
  auto km = cluster_rows(embedding, cfg);
  diagnostics["inertia"] = km.inertia;
  return ClusteringOutput{std::move(km.assignment), std::move(embedding), std::move(eigenvalues),
                          std::move(diagnostics)};
}

struct ConstrainedSpectrum {
  Eigen::MatrixXd y;          // null-space basis
  Eigen::MatrixXd embedding;  // N x K rows fed to k-means
  Eigen::VectorXd eigenvalues;
  double eigengap;  // NaN when the null space has exactly K dimensions
};

ConstrainedSpectrum constrained_embedding(const Eigen::MatrixXd& laplacian_matrix,
                                          const Eigen::MatrixXd& representation, int k,
                                          const Eigen::MatrixXd* q_inverse) {
  auto null_basis = constraint_null_basis(representation);
  const Eigen::Index null_dim = null_basis.basis.cols();
  if (null_dim < k)
    throw RankInfeasibleError("constraint null space has " + std::to_string(null_dim) +
                              " dimensions, fewer than K=" + std::to_string(k));

  Eigen::MatrixXd reduced = null_basis.basis.transpose() * laplacian_matrix * null_basis.basis;
  if (q_inverse != nullptr) reduced = (*q_inverse) * reduced * (*q_inverse);
  reduced = 0.5 * (reduced + reduced.transpose());

  const int want = null_dim > k ? k + 1 : k;
  auto pairs = smallest_eigenpairs(reduced, want);

  ConstrainedSpectrum out;
  out.eigengap = null_dim > k ? pairs.values(k) - pairs.values(k - 1)
                              : std::numeric_limits<double>::quiet_NaN();
  out.eigenvalues = pairs.values.head(k);
  Eigen::MatrixXd z = pairs.vectors.leftCols(k);
  if (q_inverse != nullptr) z = (*q_inverse) * z;
  out.embedding = null_basis.basis * z;
  out.y = std::move(null_basis.basis);
  return out;
}

ClusteringOutput urepsc_impl(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& representation,
                             int k, const KMeansConfig& kmeans_config,
                             const Eigen::MatrixXd* residual_reference) {
  require_k(static_cast<int>(similarity.rows()), k);
  auto bundle = laplacian(similarity);
  auto spec = constrained_embedding(bundle.laplacian, representation, k, nullptr);

  std::map<std::string, double> diag;
  diag["eigengap"] = spec.eigengap;
  diag["constraint_residual"] = constraint_residual(representation, spec.embedding);
  if (residual_reference != nullptr)
    diag["constraint_residual_input"] = constraint_residual(*residual_reference, spec.embedding);
  return finish(std::move(spec.embedding), std::move(spec.eigenvalues), std::move(diag),
                with_k(kmeans_config, k));
}

ClusteringOutput nrepsc_impl(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& representation,
                             int k, const KMeansConfig& kmeans_config,
                             const Eigen::MatrixXd* residual_reference) {
  require_k(static_cast<int>(similarity.rows()), k);
  auto bundle = laplacian(similarity);
  if (bundle.degree.minCoeff() <= 0.0)
    throw NotPositiveDefiniteError("similarity graph has an isolated node");

  auto null_basis = constraint_null_basis(representation);
  const Eigen::Index null_dim = null_basis.basis.cols();
  if (null_dim < k)
    throw RankInfeasibleError("constraint null space has " + std::to_string(null_dim) +
                              " dimensions, fewer than K=" + std::to_string(k));

  Eigen::MatrixXd ydy =
      null_basis.basis.transpose() * bundle.degree.asDiagonal() * null_basis.basis;
  auto root = spd_root(0.5 * (ydy + ydy.transpose()));

  Eigen::MatrixXd yly = null_basis.basis.transpose() * bundle.laplacian * null_basis.basis;
  Eigen::MatrixXd reduced = root.inverse_sqrt * yly * root.inverse_sqrt;
  reduced = 0.5 * (reduced + reduced.transpose());

  const int want = null_dim > k ? k + 1 : k;
  auto pairs = smallest_eigenpairs(reduced, want);

  Eigen::MatrixXd embedding = null_basis.basis * (root.inverse_sqrt * pairs.vectors.leftCols(k));

  std::map<std::string, double> diag;
  diag["eigengap"] = null_dim > k ? pairs.values(k) - pairs.values(k - 1)
                                  : std::numeric_limits<double>::quiet_NaN();
  diag["constraint_residual"] = constraint_residual(representation, embedding);
  if (residual_reference != nullptr)
    diag["constraint_residual_input"] = constraint_residual(*residual_reference, embedding);
  return finish(std::move(embedding), pairs.values.head(k), std::move(diag), with_k(kmeans_config, k));
}

}  // namespace

ClusteringOutput unnormalized_sc(const Eigen::MatrixXd& similarity, int n_clusters,
                                 const KMeansConfig& kmeans_config) {
  require_k(static_cast<int>(similarity.rows()), n_clusters);
  auto bundle = laplacian(similarity);
  const int dim = static_cast<int>(similarity.rows());
  const int want = dim > n_clusters ? n_clusters + 1 : n_clusters;
  auto pairs = smallest_eigenpairs(bundle.laplacian, want);

  std::map<std::string, double> diag;
  diag["eigengap"] = dim > n_clusters ? pairs.values(n_clusters) - pairs.values(n_clusters - 1)
                                      : std::numeric_limits<double>::quiet_NaN();
  return finish(pairs.vectors.leftCols(n_clusters), pairs.values.head(n_clusters), std::move(diag),
                with_k(kmeans_config, n_clusters));
}

ClusteringOutput unnormalized_sc(const Graph& similarity, int n_clusters,
                                 const KMeansConfig& kmeans_config) {
  return unnormalized_sc(similarity.adjacency(), n_clusters, kmeans_config);
}

ClusteringOutput normalized_sc(const Eigen::MatrixXd& similarity, int n_clusters,
                               const KMeansConfig& kmeans_config) {
  require_k(static_cast<int>(similarity.rows()), n_clusters);
  auto bundle = laplacian(similarity);
  if (!bundle.normalized)
    throw NotPositiveDefiniteError("similarity graph has an isolated node");
  const int dim = static_cast<int>(similarity.rows());
  const int want = dim > n_clusters ? n_clusters + 1 : n_clusters;
  auto pairs = smallest_eigenpairs(*bundle.normalized, want);

  auto normalized = normalize_rows(pairs.vectors.leftCols(n_clusters));
  std::map<std::string, double> diag;
  diag["eigengap"] = dim > n_clusters ? pairs.values(n_clusters) - pairs.values(n_clusters - 1)
                                      : std::numeric_limits<double>::quiet_NaN();
  diag["degenerate_rows"] = normalized.degenerate_rows;
  return finish(std::move(normalized.points), pairs.values.head(n_clusters), std::move(diag),
                with_k(kmeans_config, n_clusters));
}

ClusteringOutput normalized_sc(const Graph& similarity, int n_clusters,
                               const KMeansConfig& kmeans_config) {
  return normalized_sc(similarity.adjacency(), n_clusters, kmeans_config);
}

ClusteringOutput urepsc(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& representation,
                        int n_clusters, const KMeansConfig& kmeans_config) {
  return urepsc_impl(similarity, representation, n_clusters, kmeans_config, nullptr);
}

ClusteringOutput urepsc(const Graph& similarity, const Graph& representation, int n_clusters,
                        const KMeansConfig& kmeans_config) {
  if (similarity.n_nodes() != representation.n_nodes())
    throw InvalidConfigError("similarity and representation graphs disagree on N");
  return urepsc(similarity.adjacency(), representation.adjacency(), n_clusters, kmeans_config);
}

ClusteringOutput nrepsc(const Eigen::MatrixXd& similarity, const Eigen::MatrixXd& representation,
                        int n_clusters, const KMeansConfig& kmeans_config) {
  return nrepsc_impl(similarity, representation, n_clusters, kmeans_config, nullptr);
}

ClusteringOutput nrepsc(const Graph& similarity, const Graph& representation, int n_clusters,
                        const KMeansConfig& kmeans_config) {
  if (similarity.n_nodes() != representation.n_nodes())
    throw InvalidConfigError("similarity and representation graphs disagree on N");
  return nrepsc(similarity.adjacency(), representation.adjacency(), n_clusters, kmeans_config);
}

ClusteringOutput urepsc_approx(const Graph& similarity, const Graph& representation, int n_clusters,
                               int approx_rank, const KMeansConfig& kmeans_config) {
  const int n = similarity.n_nodes();
  if (approx_rank < 1 || approx_rank > n - n_clusters)
    throw InvalidConfigError("approximation rank must be in [1, N - K]");
  Eigen::MatrixXd rep = low_rank_approximation(representation, approx_rank);
  Eigen::MatrixXd original = representation.adjacency();
  return urepsc_impl(similarity.adjacency(), rep, n_clusters, kmeans_config, &original);
}

ClusteringOutput nrepsc_approx(const Graph& similarity, const Graph& representation, int n_clusters,
                               int approx_rank, const KMeansConfig& kmeans_config) {
  const int n = similarity.n_nodes();
  if (approx_rank < 1 || approx_rank > n - n_clusters)
    throw InvalidConfigError("approximation rank must be in [1, N - K]");
  Eigen::MatrixXd rep = low_rank_approximation(representation, approx_rank);
  Eigen::MatrixXd original = representation.adjacency();
  return nrepsc_impl(similarity.adjacency(), rep, n_clusters, kmeans_config, &original);
}

ClusteringOutput fairsc_baseline(const Graph& similarity, const Graph& representation, int n_clusters,
                                 int n_groups, const KMeansConfig& kmeans_config, bool normalized) {
  if (n_groups < 2) throw InvalidConfigError("group baseline needs at least two groups");
  if (similarity.n_nodes() != representation.n_nodes())
    throw InvalidConfigError("similarity and representation graphs disagree on N");

  // Group discovery: plain spectral clustering on R. Self-loops cancel in
  // L = D - A, so the diagonal is simply dropped.
  Eigen::MatrixXd rep_adj = representation.adjacency();
  rep_adj.diagonal().setZero();
  KMeansConfig group_cfg = kmeans_config;
  group_cfg.seed = Rng::derive(kmeans_config.seed, 0x67726f75 /* group stage */);
  auto groups = unnormalized_sc(rep_adj, n_groups, group_cfg);

  Graph block = block_diagonal_representation(groups.assignment);
  auto out = normalized ? nrepsc(similarity, block, n_clusters, kmeans_config)
                        : urepsc(similarity, block, n_clusters, kmeans_config);
  out.diagnostics["n_groups"] = n_groups;
  return out;
}

}  // namespace repsc
