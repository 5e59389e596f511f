#include <formdeck/linalg.hpp>

#include <stdexcept>

namespace formdeck {

namespace {
Eigen::BDCSVD<MatrixXd> svd_of(const MatrixXd& A, unsigned opts)
{
  return Eigen::BDCSVD<MatrixXd>(A, opts);
}

int rank_from(const VectorXd& s, double rel_tol)
{
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}
} // namespace

VectorXd singular_values(const MatrixXd& A)
{
  if (A.size() == 0) return VectorXd();
  return svd_of(A, 0).singularValues();
}

int numerical_rank(const MatrixXd& A, double rel_tol)
{
  return rank_from(singular_values(A), rel_tol);
}

MatrixXd null_space(const MatrixXd& A, double rel_tol)
{
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return MatrixXd::Identity(n, n);
  if (n == 0) return MatrixXd(0, 0);
  auto svd = svd_of(A, Eigen::ComputeFullV);
  int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

MatrixXd range_basis(const MatrixXd& A, double rel_tol)
{
  if (A.cols() == 0 || A.rows() == 0) return MatrixXd(A.rows(), 0);
  auto svd = svd_of(A, Eigen::ComputeThinU);
  int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

MatrixXd pseudo_inverse(const MatrixXd& A, double rel_tol)
{
  if (A.size() == 0) return MatrixXd::Zero(A.cols(), A.rows());
  auto svd = svd_of(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  int r = rank_from(s, rel_tol);
  MatrixXd V = svd.matrixV().leftCols(r);
  MatrixXd U = svd.matrixU().leftCols(r);
  return V * s.head(r).cwiseInverse().asDiagonal() * U.transpose();
}

VectorXd least_norm_solve(const MatrixXd& A, const VectorXd& b, double rel_tol)
{
  if (A.size() == 0) return VectorXd::Zero(A.cols());
  auto svd = svd_of(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  int r = rank_from(s, rel_tol);
  VectorXd y = svd.matrixU().leftCols(r).transpose() * b;
  return svd.matrixV().leftCols(r) * s.head(r).cwiseInverse().asDiagonal() * y;
}

double relative_residual(const MatrixXd& A, const VectorXd& x, const VectorXd& b)
{
  return (A * x - b).norm() / std::max(b.norm(), 1.0);
}

MatrixXd gram_root(const MatrixXd& G)
{
  if (G.size() == 0) return G;
  Eigen::LLT<MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("gram_root: matrix is not positive definite");
  return llt.matrixU();
}

} // namespace formdeck
