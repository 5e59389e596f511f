#include <formdeck/ddr.hpp>
#include <formdeck/linalg.hpp>

#include <cmath>
#include <map>
#include <stdexcept>

namespace formdeck {

namespace {
Eigen::MatrixXd coefficient_matrix(const std::vector<PolyForm>& forms, int d, int j, int r)
{
  Eigen::MatrixXd M(PolyForm::space_dim(d, j, r), forms.size());
  for (size_t i = 0; i < forms.size(); ++i) M.col(i) = forms[i].with_degree(r).coefficients();
  return M;
}

Frame ambient_frame(int n)
{
  Frame f;
  f.dim = n;
  f.origin = Eigen::VectorXd::Zero(n);
  f.axes = Eigen::MatrixXd::Identity(n, n);
  f.h = 1.0;
  return f;
}

double parity(int k) { return (k % 2) ? -1.0 : 1.0; }
} // namespace

TraceCallback ambient_form(const Mesh& m, const PolyForm& w)
{
  Frame amb = ambient_frame(m.dim());
  return [&m, w, amb](int d, int c) { return trace(w, amb, m.cell_domain(d, c).frame()); };
}

std::vector<PolyForm> DDRComplex::monomials(int d, int j, int r)
{
  std::vector<PolyForm> out;
  if (j < 0 || j > d) return out;
  for (int i = 0; i < PolyForm::space_dim(d, j, r); ++i) out.push_back(PolyForm::basis_element(d, j, r, i));
  return out;
}

DDRComplex::DDRComplex(const Mesh& m, int r) : m_mesh(m), m_r(r)
{
  if (r < 0) throw std::invalid_argument("DDRComplex: negative degree");
  const int n = m.dim();
  m_trimmed.resize(n + 1);
  for (int d = 0; d <= n; ++d) {
    m_trimmed[d].resize(m.num_cells(d));
    for (int c = 0; c < m.num_cells(d); ++c)
      for (int j = 0; j <= d; ++j) m_trimmed[d][c].push_back(build_trimmed_basis(m.cell_domain(d, c), r, j));
  }
  m_size.assign(n + 1, 0);
  m_offset.assign(n + 1, std::vector<std::vector<int>>(n + 1));
  for (int k = 0; k <= n; ++k)
    for (int d = k; d <= n; ++d)
      for (int c = 0; c < m.num_cells(d); ++c) {
        m_offset[k][d].push_back(m_size[k]);
        m_size[k] += block_size(k, d, c);
      }
  m_closure_dofs.assign(n + 1, std::vector<std::vector<std::vector<int>>>(n + 1));
  for (int k = 0; k <= n; ++k)
    for (int d = k; d <= n; ++d)
      for (int c = 0; c < m.num_cells(d); ++c) {
        std::vector<int> dofs;
        for (int j = k; j <= d; ++j)
          for (int cc : m.closure_cells(d, c, j))
            for (int i = 0; i < block_size(k, j, cc); ++i) dofs.push_back(offset(k, j, cc) + i);
        m_closure_dofs[k][d].push_back(dofs);
      }
  m_pot.assign(n + 1, std::vector<std::vector<Eigen::MatrixXd>>(n + 1));
  m_locd = m_pot;
  for (int k = 0; k <= n; ++k)
    for (int d = k; d <= n; ++d) {
      m_pot[k][d].resize(m.num_cells(d));
      m_locd[k][d].resize(m.num_cells(d));
      for (int c = 0; c < m.num_cells(d); ++c) build_local(k, d, c);
    }
  m_D.assign(n + 1, Eigen::MatrixXd());
  for (int k = 0; k <= n; ++k) {
    if (k == n) {
      m_D[k] = Eigen::MatrixXd::Zero(0, m_size[k]);
      continue;
    }
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m_size[k + 1], m_size[k]);
    for (int d = k + 1; d <= n; ++d)
      for (int c = 0; c < m.num_cells(d); ++c) {
        const TrimmedBasis& tb = trimmed(d, c, d - k - 1);
        if (tb.size() == 0) continue;
        auto psi = monomials(d, d - k - 1, r);
        Eigen::MatrixXd mom = gram_matrix(domain(d, c), tb.elements, psi);
        Eigen::MatrixXd proj = tb.factor.solve(mom * m_locd[k][d][c]);
        const auto& cols = closure_dofs(k, d, c);
        const int row0 = offset(k + 1, d, c);
        for (int i = 0; i < proj.rows(); ++i)
          for (size_t j = 0; j < cols.size(); ++j) D(row0 + i, cols[j]) += proj(i, j);
      }
    m_D[k] = D;
  }
}

std::vector<int> DDRComplex::column_map(int k, int d, int c, int dsub, int csub) const
{
  const auto& big = closure_dofs(k, d, c);
  std::map<int, int> pos;
  for (size_t i = 0; i < big.size(); ++i) pos[big[i]] = static_cast<int>(i);
  std::vector<int> out;
  for (int g : closure_dofs(k, dsub, csub)) out.push_back(pos.at(g));
  return out;
}

void DDRComplex::build_local(int k, int d, int c)
{
  const int r = m_r;
  const Domain& dom = domain(d, c);
  const auto& loc = closure_dofs(k, d, c);
  const int nloc = static_cast<int>(loc.size());
  const int own = static_cast<int>(std::find(loc.begin(), loc.end(), offset(k, d, c)) - loc.begin());
  const TrimmedBasis& tb = trimmed(d, c, d - k);
  const int bs = tb.size();
  const int j = d - k;
  const double s = parity(k + 1);

  if (d == k) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(PolyForm::space_dim(d, 0, r), nloc);
    if (bs > 0) P.middleCols(own, bs) = coefficient_matrix(tb.elements, d, 0, r);
    m_pot[k][d][c] = P;
    return;
  }

  // boundary contributions <star P_{f'} w, tr mu>_{f'} for a list of test forms
  auto boundary_terms = [&](const std::vector<PolyForm>& tests) {
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(tests.size(), nloc);
    for (const auto& b : m_mesh.cell(d, c).boundary) {
      const Domain& bd = domain(d - 1, b.cell);
      std::vector<PolyForm> tr;
      for (const auto& t : tests) tr.push_back(trace(t, dom.frame(), bd.frame()));
      auto phi = monomials(d - 1, j - 1, r);
      Eigen::MatrixXd T = gram_matrix(bd, tr, phi) * m_pot[k][d - 1][b.cell];
      auto cmap = column_map(k, d, c, d - 1, b.cell);
      for (size_t q = 0; q < cmap.size(); ++q) R.col(cmap[q]) += b.sign * T.col(q);
    }
    return R;
  };

  // local exterior derivative, tested against an orthonormal basis of P_r Lambda^{j-1}
  auto mu = full_basis(dom, r, j - 1);
  Eigen::MatrixXd rhs = boundary_terms(mu);
  if (bs > 0 && r >= 1) {
    std::vector<PolyForm> dmu;
    for (const auto& x : mu) dmu.push_back(exterior_derivative(x));
    rhs.middleCols(own, bs) += s * gram_matrix(dom, dmu, tb.elements);
  }
  Eigen::MatrixXd locd = coefficient_matrix(mu, d, j - 1, r) * rhs;
  m_locd[k][d][c] = locd;

  // potential
  auto U = koszul_basis(dom, r, j - 1);
  auto V = r >= 1 ? koszul_basis(dom, r - 1, j) : std::vector<PolyForm>{};
  auto phi = monomials(d, j, r);
  const int nu = static_cast<int>(U.size()), nv = static_cast<int>(V.size());
  Eigen::MatrixXd A(nu + nv, phi.size());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nu + nv, nloc);
  if (nu > 0) {
    std::vector<PolyForm> du;
    for (const auto& u : U) du.push_back(exterior_derivative(u));
    A.topRows(nu) = s * gram_matrix(dom, du, phi);
    auto psi = monomials(d, j - 1, r);
    B.topRows(nu) = gram_matrix(dom, U, psi) * locd - boundary_terms(U);
  }
  if (nv > 0) {
    A.bottomRows(nv) = s * gram_matrix(dom, V, phi);
    if (bs > 0) B.block(nu, own, nv, bs) = s * gram_matrix(dom, V, tb.elements);
  }
  Eigen::MatrixXd P = pseudo_inverse(A, 1e-12) * B;
  double res = (A * P - B).norm() / std::max(1.0, B.norm());
  if (res > 1e-8) throw std::runtime_error("DDR potential: inconsistent local system");
  m_pot[k][d][c] = P;
}

PolyForm DDRComplex::potential(int k, int d, int c, const Eigen::VectorXd& x) const
{
  const auto& loc = closure_dofs(k, d, c);
  Eigen::VectorXd xl(loc.size());
  for (size_t i = 0; i < loc.size(); ++i) xl(i) = x(loc[i]);
  return PolyForm::from_coefficients(d, d - k, m_r, m_pot[k][d][c] * xl);
}

PolyForm DDRComplex::local_d(int k, int d, int c, const Eigen::VectorXd& x) const
{
  const auto& loc = closure_dofs(k, d, c);
  Eigen::VectorXd xl(loc.size());
  for (size_t i = 0; i < loc.size(); ++i) xl(i) = x(loc[i]);
  return PolyForm::from_coefficients(d, d - k - 1, m_r, m_locd[k][d][c] * xl);
}

PolyForm DDRComplex::component(int k, int d, int c, const Eigen::VectorXd& x) const
{
  const TrimmedBasis& tb = trimmed(d, c, d - k);
  return tb.expand(x.segment(offset(k, d, c), tb.size()));
}

Eigen::VectorXd DDRComplex::interpolate(int k, const TraceCallback& w) const
{
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m_size[k]);
  for (int d = k; d <= dim(); ++d)
    for (int c = 0; c < m_mesh.num_cells(d); ++c) {
      const TrimmedBasis& tb = trimmed(d, c, d - k);
      if (tb.size() == 0) continue;
      PolyForm st = hodge_star(w(d, c), domain(d, c).h());
      x.segment(offset(k, d, c), tb.size()) = trimmed_project(domain(d, c), tb, st);
    }
  return x;
}

Eigen::VectorXd DDRComplex::norm_weights(int k, int j, NormKind kind) const
{
  const int n = dim();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m_mesh.num_cells(j));
  if (j < k) return w;
  if (kind == NormKind::Explicit) {
    for (int c = 0; c < m_mesh.num_cells(j); ++c)
      for (int t : m_mesh.top_cells_containing(j, c)) w(c) += std::pow(m_mesh.cell_h(n, t), n - j);
    return w;
  }
  // recursive: weight of f' sums w(g) h_g over the (j+1)-cells g having f' on their boundary
  if (j == n) return Eigen::VectorXd::Ones(m_mesh.num_cells(n));
  Eigen::VectorXd up = norm_weights(k, j + 1, kind);
  for (int g = 0; g < m_mesh.num_cells(j + 1); ++g)
    for (const auto& b : m_mesh.cell(j + 1, g).boundary) w(b.cell) += up(g) * m_mesh.cell_h(j + 1, g);
  return w;
}

Eigen::MatrixXd DDRComplex::norm_gram(int k, NormKind kind) const
{
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m_size[k], m_size[k]);
  for (int d = k; d <= dim(); ++d) {
    Eigen::VectorXd w = norm_weights(k, d, kind);
    for (int c = 0; c < m_mesh.num_cells(d); ++c) {
      const TrimmedBasis& tb = trimmed(d, c, d - k);
      M.block(offset(k, d, c), offset(k, d, c), tb.size(), tb.size()) = w(c) * tb.gram;
    }
  }
  return M;
}

double DDRComplex::norm(int k, const Eigen::VectorXd& x, NormKind kind) const
{
  return std::sqrt(std::max(0.0, x.dot(norm_gram(k, kind) * x)));
}

double DDRComplex::stokes_residual(int k, const Eigen::VectorXd& x) const
{
  double worst = 0.0;
  for (int d = k + 1; d <= dim(); ++d)
    for (int c = 0; c < m_mesh.num_cells(d); ++c) {
      const Domain& dom = domain(d, c);
      const int j = d - k;
      PolyForm dw = hodge_star_inverse(local_d(k, d, c, x), dom.h());
      PolyForm wf = hodge_star_inverse(component(k, d, c, x), dom.h());
      double scale = 0.0, res = 0.0;
      for (const auto& mu : monomials(d, j - 1, m_r)) {
        double lhs = integrate_top(dom, wedge(dw, mu));
        double own = j - 1 < d && m_r >= 1 ? parity(k + 1) * integrate_top(dom, wedge(wf, exterior_derivative(mu))) : 0.0;
        double bnd = 0.0, bscale = 0.0;
        for (const auto& b : m_mesh.cell(d, c).boundary) {
          const Domain& bd = domain(d - 1, b.cell);
          PolyForm p = hodge_star_inverse(potential(k, d - 1, b.cell, x), bd.h());
          double t = b.sign * integrate_top(bd, wedge(p, trace(mu, dom.frame(), bd.frame())));
          bnd += t;
          bscale += std::abs(t);
        }
        res = std::max(res, std::abs(lhs - own - bnd));
        scale = std::max({scale, std::abs(lhs), std::abs(own), bscale});
      }
      if (scale > 0) worst = std::max(worst, res / scale);
    }
  return worst;
}

double DDRComplex::potential_consistency(int k, const TraceCallback& w) const
{
  Eigen::VectorXd x = interpolate(k, w);
  double worst = 0.0;
  for (int d = k; d <= dim(); ++d)
    for (int c = 0; c < m_mesh.num_cells(d); ++c) {
      const Domain& dom = domain(d, c);
      PolyForm target = hodge_star(w(d, c), dom.h());
      PolyForm diff = potential(k, d, c, x) - target;
      double nt = std::sqrt(inner_product(dom, target, target));
      double nd = std::sqrt(std::max(0.0, inner_product(dom, diff, diff)));
      if (nt > 0) worst = std::max(worst, nd / nt);
    }
  return worst;
}

} // namespace formdeck
