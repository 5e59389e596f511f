#include <formdeck/geometry.hpp>

#include <cmath>
#include <stdexcept>

namespace formdeck {

Eigen::VectorXd Frame::to_local(const Eigen::VectorXd& x) const
{
  return axes.transpose() * (x - origin) / h;
}

Eigen::VectorXd Frame::to_ambient(const Eigen::VectorXd& y) const
{
  return origin + h * (axes * y);
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> Frame::embedding_of(const Frame& sub) const
{
  Eigen::MatrixXd A = axes.transpose() * sub.axes * (sub.h / h);
  Eigen::VectorXd b = axes.transpose() * (sub.origin - origin) / h;
  return {A, b};
}

Frame simplex_frame(const Eigen::MatrixXd& pts, const Eigen::VectorXd& origin, double h)
{
  const int n = static_cast<int>(pts.rows());
  const int k = static_cast<int>(pts.cols()) - 1;
  Frame f;
  f.dim = k;
  f.origin = origin;
  f.h = h;
  f.axes = Eigen::MatrixXd(n, k);
  if (k == 0) return f;
  Eigen::MatrixXd E(n, k);
  for (int i = 0; i < k; ++i) E.col(i) = pts.col(i + 1) - pts.col(0);
  // Gram-Schmidt with column pivoting on the edge vectors
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(E);
  if (qr.rank() < k) throw std::runtime_error("simplex_frame: degenerate simplex");
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  f.axes = Q;
  if ((Q.transpose() * E).determinant() < 0) f.axes.col(k - 1) *= -1.0;
  return f;
}

double orientation_in_frame(const Frame& f, const Eigen::MatrixXd& pts)
{
  const int k = f.dim;
  if (k == 0) return 1.0;
  Eigen::MatrixXd E(pts.rows(), k);
  for (int i = 0; i < k; ++i) E.col(i) = pts.col(i + 1) - pts.col(0);
  return (f.axes.transpose() * E).determinant();
}

double simplex_measure(const Eigen::MatrixXd& pts)
{
  const int k = static_cast<int>(pts.cols()) - 1;
  if (k == 0) return 1.0;
  Eigen::MatrixXd E(pts.rows(), k);
  for (int i = 0; i < k; ++i) E.col(i) = pts.col(i + 1) - pts.col(0);
  double g = (E.transpose() * E).determinant();
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(std::max(g, 0.0)) / fact;
}

double diameter(const Eigen::MatrixXd& pts)
{
  double d = 0.0;
  for (int i = 0; i < pts.cols(); ++i)
    for (int j = i + 1; j < pts.cols(); ++j) d = std::max(d, (pts.col(i) - pts.col(j)).norm());
  return d;
}

double simplex_inradius(const Eigen::MatrixXd& pts)
{
  const int k = static_cast<int>(pts.cols()) - 1;
  if (k == 0) return 0.0;
  double surface = 0.0;
  for (int i = 0; i <= k; ++i) {
    Eigen::MatrixXd facet(pts.rows(), k);
    int c = 0;
    for (int j = 0; j <= k; ++j)
      if (j != i) facet.col(c++) = pts.col(j);
    surface += simplex_measure(facet);
  }
  return k * simplex_measure(pts) / surface;
}

std::vector<double> simplex_moments(const Eigen::MatrixXd& local_pts, double h, int deg)
{
  const int d = static_cast<int>(local_pts.rows());
  auto table = MonomialTable::get(d, deg);
  std::vector<double> out(table->size(), 0.0);
  if (d == 0) {
    out[0] = 1.0;
    return out;
  }
  Eigen::MatrixXd A(d, d);
  for (int i = 0; i < d; ++i) A.col(i) = local_pts.col(i + 1) - local_pts.col(0);
  double jac = std::abs(A.determinant()) * std::pow(h, d);
  // y_j as polynomials in the reference coordinates
  std::vector<Polynomial> lin;
  for (int j = 0; j < d; ++j) {
    Polynomial p(d, 1);
    p[0] = local_pts(j, 0);
    for (int i = 0; i < d; ++i) {
      std::vector<int> e(d, 0);
      e[i] = 1;
      p[p.table().index_of(e)] = A(j, i);
    }
    lin.push_back(p);
  }
  std::vector<Polynomial> mono(table->size());
  mono[0] = Polynomial::constant(d, 1.0);
  out[0] = jac * mono[0].integrate_reference_simplex();
  for (int i = 1; i < table->size(); ++i) {
    auto e = table->exponents(i);
    int j = 0;
    while (e[j] == 0) ++j;
    e[j] -= 1;
    mono[i] = mono[table->index_of(e)] * lin[j];
    out[i] = jac * mono[i].integrate_reference_simplex();
  }
  return out;
}

Domain::Domain(Frame frame, const std::vector<Eigen::MatrixXd>& simplices) : m_frame(std::move(frame))
{
  for (const auto& s : simplices) {
    Eigen::MatrixXd loc(m_frame.dim, s.cols());
    for (int i = 0; i < s.cols(); ++i) loc.col(i) = m_frame.to_local(s.col(i));
    m_local.push_back(loc);
    m_measure += simplex_measure(s);
  }
}

std::vector<double> Domain::moments(int deg) const
{
  std::lock_guard<std::mutex> lock(m_mutex);
  if (deg > m_moment_degree) {
    int target = std::max(deg, m_moment_degree + 2);
    std::vector<double> acc(MonomialTable::get(dim(), target)->size(), 0.0);
    for (const auto& s : m_local) {
      auto m = simplex_moments(s, m_frame.h, target);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += m[i];
    }
    m_moments = std::move(acc);
    m_moment_degree = target;
  }
  // prefix of a graded table is the smaller table
  return std::vector<double>(m_moments.begin(), m_moments.begin() + MonomialTable::get(dim(), deg)->size());
}

double Domain::integrate(const Polynomial& p) const
{
  auto m = moments(p.degree());
  double s = 0.0;
  for (size_t i = 0; i < m.size(); ++i) s += p[i] * m[i];
  return s;
}

} // namespace formdeck
