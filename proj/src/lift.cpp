#include <formdeck/lift.hpp>
#include <formdeck/linalg.hpp>

#include <cmath>
#include <stdexcept>

namespace formdeck {

CochainLift::CochainLift(const Mesh& m, const WhitneyComplex& w) : m_mesh(m), m_whitney(w)
{
  const int n = m.dim();
  m_I.assign(n + 1, Eigen::MatrixXd());
  m_J.assign(n + 1, Eigen::MatrixXd());
  m_span.assign(n + 1, std::vector<std::vector<SpanningSet>>(n + 1));
  for (int k = 0; k <= n; ++k) {
    m_J[k] = Eigen::MatrixXd::Zero(m.num_cells(k), m.num_simplices(k));
    for (int c = 0; c < m.num_cells(k); ++c)
      for (int s : m.cell(k, c).simplices) m_J[k](c, s) = 1.0;
  }
  for (int k = n; k >= 0; --k) {
    Eigen::MatrixXd I = Eigen::MatrixXd::Zero(m.num_simplices(k), m.num_cells(k));
    for (int c = 0; c < m.num_cells(k); ++c)
      for (int s : m.cell(k, c).simplices) I(s, c) = m.simplex_measure(k, s) / m.cell_measure(k, c);
    Eigen::MatrixXd DM = k < n ? Eigen::MatrixXd(coboundary_matrix(m, ComplexKind::Cellular, k).cast<double>()) : Eigen::MatrixXd();
    for (int d = k + 1; d <= n; ++d) {
      m_span[k][d].resize(m.num_cells(d));
      for (int f = 0; f < m.num_cells(d); ++f) {
        SpanningSet ss = construct_spanning_set(m, d, f, k);
        const auto& bsimp = m.cell_boundary_simplices(d, f, k);
        for (size_t i = 0; i < ss.simplices.size(); ++i) {
          Eigen::VectorXd z = ss.cycles[i];
          if (k == 0) z(anchor(d, f)) -= 1.0;
          Eigen::VectorXd zb = Eigen::VectorXd::Zero(z.size());
          for (int s : bsimp) zb(s) = z(s);
          Preimage pw = boundary_preimage(m, d, f, k, z);
          Eigen::RowVectorXd row = (pw.chain.transpose() * m_I[k + 1]) * DM - zb.transpose() * I;
          I.row(ss.simplices[i]) = row;
        }
        m_span[k][d][f] = std::move(ss);
      }
    }
    m_I[k] = I;
  }
}

int CochainLift::anchor(int d, int cell) const
{
  const auto& b = m_mesh.cell_boundary_simplices(d, cell, 0);
  if (b.empty()) throw std::logic_error("anchor: cell without boundary vertices");
  return b.front();
}

double CochainLift::cochain_map_defect(int k) const
{
  if (k >= m_mesh.dim()) return 0.0;
  Eigen::MatrixXd DS = coboundary_matrix(m_mesh, ComplexKind::Simplicial, k).cast<double>();
  Eigen::MatrixXd DM = coboundary_matrix(m_mesh, ComplexKind::Cellular, k).cast<double>();
  return (DS * m_I[k] - m_I[k + 1] * DM).cwiseAbs().maxCoeff();
}

double CochainLift::collapse_map_defect(int k) const
{
  if (k >= m_mesh.dim()) return 0.0;
  Eigen::MatrixXd DS = coboundary_matrix(m_mesh, ComplexKind::Simplicial, k).cast<double>();
  Eigen::MatrixXd DM = coboundary_matrix(m_mesh, ComplexKind::Cellular, k).cast<double>();
  return (DM * m_J[k] - m_J[k + 1] * DS).cwiseAbs().maxCoeff();
}

Eigen::VectorXd CochainLift::cell_weights(int j, double e) const
{
  const int n = m_mesh.dim();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m_mesh.num_cells(j));
  for (int c = 0; c < m_mesh.num_cells(j); ++c)
    for (int t : m_mesh.top_cells_containing(j, c)) w(c) += std::pow(m_mesh.cell_h(n, t), e);
  return w;
}

CochainLift::PoincareResult CochainLift::cochain_poincare(int k, const Eigen::VectorXd& xi) const
{
  const int n = m_mesh.dim();
  if (k >= n) throw std::invalid_argument("cochain_poincare: k must be below the mesh dimension");
  Eigen::MatrixXd DM = coboundary_matrix(m_mesh, ComplexKind::Cellular, k).cast<double>();
  Eigen::VectorXd theta = least_norm_solve(DM, xi);
  if (relative_residual(DM, theta, xi) > 1e-9) throw std::invalid_argument("cochain_poincare: datum is not a coboundary");
  auto pre = m_whitney.min_norm_preimage_cochain(k, m_I[k + 1] * xi);
  PoincareResult r;
  r.lambda = m_J[k] * pre.cochain;
  r.residual = (DM * r.lambda - xi).norm() / std::max(1.0, xi.norm());
  Eigen::VectorXd wl = cell_weights(k, n - 2.0 * k), wx = cell_weights(k + 1, n - 2.0 * k - 2.0);
  double num = r.lambda.dot(wl.asDiagonal() * r.lambda);
  double den = xi.dot(wx.asDiagonal() * xi);
  r.weighted_ratio = den > 0 ? std::sqrt(num / den) : 0.0;
  return r;
}

Eigen::MatrixXd CochainLift::poincare_operator(int k) const
{
  return m_J[k] * m_whitney.min_norm_operator(k) * m_I[k + 1];
}

double CochainLift::poincare_constant(int k) const
{
  const int n = m_mesh.dim();
  Eigen::MatrixXd DM = coboundary_matrix(m_mesh, ComplexKind::Cellular, k).cast<double>();
  Eigen::MatrixXd Q = range_basis(DM);
  if (Q.cols() == 0) return 0.0;
  Eigen::MatrixXd L = poincare_operator(k) * Q;
  Eigen::VectorXd wl = cell_weights(k, n - 2.0 * k), wx = cell_weights(k + 1, n - 2.0 * k - 2.0);
  Eigen::MatrixXd A = L.transpose() * wl.asDiagonal() * L;
  Eigen::MatrixXd B = Q.transpose() * wx.asDiagonal() * Q;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace formdeck
