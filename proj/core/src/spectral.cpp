#include "repsc/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "repsc/errors.hpp"

namespace repsc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidConfigError("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) throw InvalidConfigError("matrix is not symmetric within tolerance");
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_symmetric(const Eigen::MatrixXd& m) {
  require_symmetric(m);
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed to converge");
  return solver;
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double v = vectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) vectors.col(c) = -vectors.col(c);
        break;
      }
    }
  }
}

}  // namespace

LaplacianBundle laplacian(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols()) throw InvalidConfigError("adjacency must be square");
  if (adjacency.diagonal().cwiseAbs().maxCoeff() > 0.0)
    throw InvalidConfigError("similarity adjacency must have a zero diagonal");
  const Eigen::Index n = adjacency.rows();

  LaplacianBundle bundle;
  bundle.degree = adjacency.rowwise().sum();
  bundle.laplacian = -adjacency;
  bundle.laplacian.diagonal() += bundle.degree;

  if (bundle.degree.minCoeff() > 0.0) {
    Eigen::VectorXd inv_sqrt = bundle.degree.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd norm = inv_sqrt.asDiagonal() * adjacency * inv_sqrt.asDiagonal();
    bundle.normalized = Eigen::MatrixXd::Identity(n, n) - norm;
  }
  return bundle;
}

LaplacianBundle laplacian(const Graph& similarity) {
  return laplacian(similarity.adjacency());
}

NullSpaceBasis constraint_null_basis(const Eigen::MatrixXd& representation) {
  if (representation.rows() != representation.cols())
    throw InvalidConfigError("representation matrix must be square");
  const Eigen::Index n = representation.rows();

  // R (I - 11^T/N) = R - (R 1) 1^T / N, a rank-one update.
  Eigen::VectorXd row_sums = representation.rowwise().sum();
  Eigen::MatrixXd op = representation - row_sums * Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double tol = static_cast<double>(n) * kEps * sigma(0);
  int rank = 0;
  while (rank < n && sigma(rank) > tol) ++rank;

  NullSpaceBasis out;
  out.rank_constraint = rank;
  out.basis = svd.matrixV().rightCols(n - rank);
  return out;
}

NullSpaceBasis constraint_null_basis(const Graph& representation) {
  return constraint_null_basis(representation.adjacency());
}

EigenPairs smallest_eigenpairs(const Eigen::MatrixXd& matrix, int count) {
  if (count < 1) throw InvalidConfigError("eigenpair count must be positive");
  if (count > matrix.rows()) throw InvalidConfigError("eigenpair count exceeds matrix dimension");
  auto solver = solve_symmetric(matrix);
  EigenPairs out;
  out.values = solver.eigenvalues().head(count);
  out.vectors = solver.eigenvectors().leftCols(count);
  fix_signs(out.vectors);
  return out;
}

SpdRoot spd_root(const Eigen::MatrixXd& matrix) {
  auto solver = solve_symmetric(matrix);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Eigen::Index n = matrix.rows();
  const double lambda_max = ev(n - 1);
  const double tol = static_cast<double>(n) * kEps * std::max(lambda_max, 0.0);
  if (ev(0) <= tol)
    throw NotPositiveDefiniteError("matrix is not positive definite (smallest eigenvalue " +
                                   std::to_string(ev(0)) + ")");
  Eigen::VectorXd roots = ev.cwiseSqrt();
  SpdRoot out;
  out.sqrt = solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().transpose();
  out.inverse_sqrt =
      solver.eigenvectors() * roots.cwiseInverse().asDiagonal() * solver.eigenvectors().transpose();
  out.sqrt = 0.5 * (out.sqrt + out.sqrt.transpose());
  out.inverse_sqrt = 0.5 * (out.inverse_sqrt + out.inverse_sqrt.transpose());
  return out;
}

Eigen::MatrixXd matrix_sqrt_spd(const Eigen::MatrixXd& matrix) {
  return spd_root(matrix).sqrt;
}

Eigen::MatrixXd low_rank_approximation(const Eigen::MatrixXd& symmetric, int rank) {
  const Eigen::Index n = symmetric.rows();
  if (rank < 1 || rank > n) throw InvalidConfigError("rank must be in [1, N]");
  auto solver = solve_symmetric(symmetric);
  const Eigen::VectorXd& ev = solver.eigenvalues();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(ev(a)) > std::abs(ev(b));
  });

  Eigen::MatrixXd approx = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < rank; ++i) {
    const Eigen::Index idx = order[i];
    approx.noalias() += ev(idx) * solver.eigenvectors().col(idx) * solver.eigenvectors().col(idx).transpose();
  }
  return 0.5 * (approx + approx.transpose());
}

Eigen::MatrixXd low_rank_approximation(const Graph& representation, int rank) {
  return low_rank_approximation(representation.adjacency(), rank);
}

}  // namespace repsc
