#include <formdeck/whitney.hpp>
#include <formdeck/linalg.hpp>
#include <formdeck/topology.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace formdeck {

PolyForm whitney_form(const std::vector<PolyForm>& lambda, const std::vector<int>& seq)
{
  const int d = lambda[0].dim();
  const int k = static_cast<int>(seq.size()) - 1;
  PolyForm out(d, k, 1);
  for (int i = 0; i <= k; ++i) {
    PolyForm term = lambda[seq[i]];
    PolyForm dl(d, 0, 0);
    dl.component(0)[0] = 1.0;
    for (int j = 0; j <= k; ++j)
      if (j != i) dl = wedge(dl, exterior_derivative(lambda[seq[j]]));
    PolyForm t = wedge(term, dl);
    out += ((i % 2) ? -1.0 : 1.0) * t.with_degree(1);
  }
  return out;
}

WhitneyComplex::WhitneyComplex(const Mesh& m) : m_mesh(m)
{
  const int n = m.dim();
  const int nt = m.num_simplices(n);
  m_faces.assign(n + 1, std::vector<std::vector<int>>(nt));
  m_basis.assign(n + 1, std::vector<std::vector<PolyForm>>(nt));
  for (int t = 0; t < nt; ++t) {
    Eigen::MatrixXd pts = m.simplex_points(n, t);
    Frame fr;
    fr.dim = n;
    fr.origin = pts.rowwise().mean();
    fr.axes = Eigen::MatrixXd::Identity(n, n);
    fr.h = m.simplex_diameter(n, t);
    m_dom.emplace_back(fr, std::vector<Eigen::MatrixXd>{pts});
    // barycentric coordinates: lambda(x) = a . x + b
    Eigen::MatrixXd S(n + 1, n + 1);
    S.topRows(n) = pts;
    S.row(n).setOnes();
    Eigen::MatrixXd inv = S.inverse(); // row p gives (a_p, b_p)
    std::vector<PolyForm> lam;
    for (int p = 0; p <= n; ++p) {
      PolyForm l(n, 0, 1);
      Eigen::VectorXd a = inv.row(p).head(n).transpose();
      double b = inv(p, n);
      l.component(0)[0] = a.dot(fr.origin) + b;
      for (int j = 0; j < n; ++j) {
        std::vector<int> e(n, 0);
        e[j] = 1;
        l.component(0)[l.component(0).table().index_of(e)] = fr.h * a(j);
      }
      lam.push_back(l);
    }
    m_lambda.push_back(lam);
    const auto& tv = m.simplex(n, t);
    for (int k = 0; k <= n; ++k) {
      std::vector<int> ids;
      for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
        if (__builtin_popcount(mask) != k + 1) continue;
        std::vector<int> f;
        for (int i = 0; i <= n; ++i)
          if (mask & (1 << i)) f.push_back(tv[i]);
        ids.push_back(m.find_simplex(f));
      }
      std::sort(ids.begin(), ids.end());
      m_faces[k][t] = ids;
      for (int F : ids) {
        std::vector<int> seq;
        for (int v : m.simplex(k, F)) seq.push_back(static_cast<int>(std::find(tv.begin(), tv.end(), v) - tv.begin()));
        m_basis[k][t].push_back(whitney_form(lam, seq));
      }
    }
  }
  m_diag.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    Eigen::MatrixXd I = de_rham_integrals(0, k);
    m_diag[k] = I(0, 0);
  }
  m_gram.assign(n + 1, Eigen::MatrixXd());
  m_minnorm.assign(n + 1, nullptr);
  for (int k = 0; k <= n; ++k) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m.num_simplices(k), m.num_simplices(k));
    for (int t = 0; t < nt; ++t) {
      Eigen::MatrixXd g = gram_matrix(m_dom[t], m_basis[k][t]);
      const auto& ids = m_faces[k][t];
      for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = 0; j < ids.size(); ++j) G(ids[i], ids[j]) += g(i, j);
    }
    m_gram[k] = G;
  }
}

Eigen::MatrixXd WhitneyComplex::de_rham_integrals(int t, int k) const
{
  const auto& ids = m_faces[k][t];
  Eigen::MatrixXd I(ids.size(), ids.size());
  const Frame& fr = m_dom[t].frame();
  for (size_t i = 0; i < ids.size(); ++i) {
    Eigen::MatrixXd pts = m_mesh.simplex_points(k, ids[i]);
    Eigen::MatrixXd loc(dim(), pts.cols());
    for (int c = 0; c < pts.cols(); ++c) loc.col(c) = fr.to_local(pts.col(c));
    for (size_t j = 0; j < ids.size(); ++j) I(i, j) = integrate_on_simplex(m_basis[k][t][j], loc);
  }
  return I;
}

PiecewiseForm WhitneyComplex::whitney_map(int k, const Eigen::VectorXd& c) const
{
  PiecewiseForm out;
  for (size_t t = 0; t < m_dom.size(); ++t) {
    PolyForm w(dim(), k, 1);
    const auto& ids = m_faces[k][t];
    for (size_t i = 0; i < ids.size(); ++i) w += c(ids[i]) * m_basis[k][t][i];
    out.push_back(w);
  }
  return out;
}

Eigen::VectorXd WhitneyComplex::de_rham_map(int k, const PiecewiseForm& w) const
{
  Eigen::VectorXd c = Eigen::VectorXd::Constant(m_mesh.num_simplices(k), std::nan(""));
  for (size_t t = 0; t < m_dom.size(); ++t) {
    const Frame& fr = m_dom[t].frame();
    for (int F : m_faces[k][t]) {
      if (!std::isnan(c(F))) continue;
      Eigen::MatrixXd pts = m_mesh.simplex_points(k, F);
      Eigen::MatrixXd loc(dim(), pts.cols());
      for (int q = 0; q < pts.cols(); ++q) loc.col(q) = fr.to_local(pts.col(q));
      c(F) = integrate_on_simplex(w[t], loc) / m_diag[k];
    }
  }
  return c;
}

double WhitneyComplex::conformity_defect(int k, const PiecewiseForm& w) const
{
  // compare traces on each k-face through a frame of the face
  const int n = dim();
  std::vector<int> first(m_mesh.num_simplices(k), -1);
  double defect = 0.0;
  for (size_t t = 0; t < m_dom.size(); ++t)
    for (int F : m_faces[k][t]) {
      if (first[F] < 0) {
        first[F] = static_cast<int>(t);
        continue;
      }
      Eigen::MatrixXd pts = m_mesh.simplex_points(k, F);
      Frame ff = simplex_frame(pts, pts.rowwise().mean(), m_mesh.simplex_diameter(k, F));
      PolyForm a = trace(w[first[F]], m_dom[first[F]].frame(), ff);
      PolyForm b = trace(w[t], m_dom[t].frame(), ff);
      defect = std::max(defect, (a - b).max_abs());
    }
  (void)n;
  return defect;
}

double WhitneyComplex::l2_norm(const PiecewiseForm& w) const
{
  double s = 0.0;
  for (size_t t = 0; t < m_dom.size(); ++t) s += inner_product(m_dom[t], w[t], w[t]);
  return std::sqrt(s);
}

const Eigen::MatrixXd& WhitneyComplex::min_norm_operator(int k) const
{
  std::lock_guard<std::mutex> lock(m_mutex);
  if (!m_minnorm[k]) {
    Eigen::MatrixXd D = coboundary_matrix(m_mesh, ComplexKind::Simplicial, k).cast<double>();
    Eigen::LLT<Eigen::MatrixXd> llt(m_gram[k]);
    if (llt.info() != Eigen::Success) throw std::runtime_error("Whitney Gram matrix is not positive definite");
    // D L^{-T}
    Eigen::MatrixXd A = llt.matrixU().transpose().solve(D.transpose()).transpose();
    Eigen::MatrixXd P = pseudo_inverse(A, 1e-10);
    m_minnorm[k] = std::make_shared<Eigen::MatrixXd>(llt.matrixU().solve(P));
  }
  return *m_minnorm[k];
}

WhitneyComplex::MinNormResult WhitneyComplex::min_norm_preimage_cochain(int k, const Eigen::VectorXd& xi) const
{
  MinNormResult r;
  r.cochain = min_norm_operator(k) * xi;
  Eigen::VectorXd back = coboundary(m_mesh, ComplexKind::Simplicial, k, r.cochain);
  r.residual = (back - xi).norm() / std::max(1.0, xi.norm());
  if (r.residual > 1e-8) throw std::runtime_error("min_norm_preimage: datum is not a coboundary (harmonic part " + std::to_string(r.residual) + ")");
  r.form = whitney_map(k, r.cochain);
  return r;
}

WhitneyComplex::MinNormResult WhitneyComplex::min_norm_preimage(int k, const PiecewiseForm& xi) const
{
  // d W^k = (k+1) W^{k+1} delta with the 1/k! normalisation
  return min_norm_preimage_cochain(k, de_rham_map(k + 1, xi) / (k + 1.0));
}

} // namespace formdeck
