#pragma once

#include <Eigen/Dense>
#include <optional>

#include "repsc/graph.hpp"

namespace repsc {

/// L = D - A together with the degree vector; the normalized Laplacian
/// I - D^{-1/2} A D^{-1/2} is present only when every degree is positive.
struct LaplacianBundle {
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd degree;
  std::optional<Eigen::MatrixXd> normalized;
};

/// Builds the Laplacian bundle from a symmetric adjacency matrix with zero
/// diagonal (binary or real-valued).
LaplacianBundle laplacian(const Eigen::MatrixXd& adjacency);
LaplacianBundle laplacian(const Graph& similarity);

/// Orthonormal basis Y of the null space of the constraint operator
/// R (I - 11^T/N); feasible embeddings are exactly Y Z. rank_constraint is
/// the numerical rank of the operator, so Y has N - rank_constraint columns
/// (at least one: the operator annihilates the all-ones direction).
struct NullSpaceBasis {
  Eigen::MatrixXd basis;
  int rank_constraint = 0;
};

/// Full SVD of the N x N constraint operator; singular values at or below
/// N * eps * sigma_max count as zero.
NullSpaceBasis constraint_null_basis(const Eigen::MatrixXd& representation);
NullSpaceBasis constraint_null_basis(const Graph& representation);

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, same order
};

/// `count` smallest eigenpairs of a symmetric matrix. Sign convention: the
/// first entry of each eigenvector with magnitude above 1e-12 is made
/// positive, so results are reproducible.
EigenPairs smallest_eigenpairs(const Eigen::MatrixXd& matrix, int count);

/// Symmetric square root of an SPD matrix (Q with Q^2 = input). Throws
/// NotPositiveDefiniteError when the smallest eigenvalue is not safely
/// positive.
Eigen::MatrixXd matrix_sqrt_spd(const Eigen::MatrixXd& matrix);

/// Square root and its inverse from one eigendecomposition.
struct SpdRoot {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inverse_sqrt;
};
SpdRoot spd_root(const Eigen::MatrixXd& matrix);

/// Best symmetric rank-`rank` approximation in Frobenius norm: keeps the
/// `rank` eigenpairs of largest magnitude.
Eigen::MatrixXd low_rank_approximation(const Eigen::MatrixXd& symmetric, int rank);
Eigen::MatrixXd low_rank_approximation(const Graph& representation, int rank);

}  // namespace repsc
