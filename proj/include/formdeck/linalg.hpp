// Dense linear algebra helpers shared by the topology, Whitney and DDR layers.
// Everything goes through SVD based rank decisions so that one relative
// tolerance governs "numerically zero" in the whole library.

#ifndef FORMDECK_LINALG_HPP
#define FORMDECK_LINALG_HPP

#include <Eigen/Dense>

namespace formdeck {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Singular values of A (descending)
VectorXd singular_values(const MatrixXd& A);

/// Rank of A: number of singular values above rel_tol times the largest one
int numerical_rank(const MatrixXd& A, double rel_tol = 1e-9);

/// Orthonormal basis of ker A
MatrixXd null_space(const MatrixXd& A, double rel_tol = 1e-9);

/// Orthonormal basis of the column space of A
MatrixXd range_basis(const MatrixXd& A, double rel_tol = 1e-9);

/// Moore-Penrose pseudo-inverse with truncation at rel_tol
MatrixXd pseudo_inverse(const MatrixXd& A, double rel_tol = 1e-12);

/// Least-norm least-squares solution of A x = b
VectorXd least_norm_solve(const MatrixXd& A, const VectorXd& b, double rel_tol = 1e-12);

/// Relative residual |A x - b| / max(|b|, 1)
double relative_residual(const MatrixXd& A, const VectorXd& x, const VectorXd& b);

/// Upper Cholesky-like factor R with R^T R = G for a symmetric positive
/// definite G; throws when G is not numerically positive definite
MatrixXd gram_root(const MatrixXd& G);

} // namespace formdeck

#endif
