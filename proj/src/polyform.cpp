#include <formdeck/polyform.hpp>

#include <cmath>
#include <stdexcept>

namespace formdeck {

PolyForm::PolyForm(int d, int k, int r) : m_d(d), m_k(k), m_r(std::max(r, 0))
{
  if (k < 0 || k > d) throw std::invalid_argument("PolyForm: form degree out of range");
  m_comp.assign(binomial(d, k), Polynomial(d, m_r));
}

int PolyForm::space_dim(int d, int k, int r)
{
  return monomial_count(d, r) * static_cast<int>(binomial(d, k));
}

Eigen::VectorXd PolyForm::coefficients() const
{
  const int nm = monomial_count(m_d, m_r);
  Eigen::VectorXd c(nm * n_components());
  for (int a = 0; a < n_components(); ++a)
    for (int i = 0; i < nm; ++i) c(a * nm + i) = m_comp[a][i];
  return c;
}

PolyForm PolyForm::from_coefficients(int d, int k, int r, const Eigen::VectorXd& c)
{
  PolyForm w(d, k, r);
  const int nm = monomial_count(d, r);
  if (c.size() != nm * w.n_components())
    throw std::invalid_argument("PolyForm::from_coefficients: size mismatch");
  for (int a = 0; a < w.n_components(); ++a)
    for (int i = 0; i < nm; ++i) w.m_comp[a][i] = c(a * nm + i);
  return w;
}

PolyForm PolyForm::basis_element(int d, int k, int r, int i)
{
  Eigen::VectorXd c = Eigen::VectorXd::Zero(space_dim(d, k, r));
  c(i) = 1.0;
  return from_coefficients(d, k, r, c);
}

PolyForm PolyForm::with_degree(int r) const
{
  PolyForm w(m_d, m_k, r);
  for (int a = 0; a < n_components(); ++a) w.m_comp[a] = m_comp[a].with_degree(w.m_r);
  return w;
}

PolyForm& PolyForm::operator+=(const PolyForm& o)
{
  if (o.m_d != m_d || o.m_k != m_k) throw std::invalid_argument("PolyForm +=: incompatible forms");
  if (o.m_r > m_r) *this = with_degree(o.m_r);
  for (int a = 0; a < n_components(); ++a) m_comp[a] += o.m_comp[a];
  return *this;
}

PolyForm& PolyForm::operator*=(double s)
{
  for (auto& p : m_comp) p *= s;
  return *this;
}

double PolyForm::max_abs() const
{
  double m = 0.0;
  for (const auto& p : m_comp)
    for (double x : p.coeffs()) m = std::max(m, std::abs(x));
  return m;
}

PolyForm exterior_derivative(const PolyForm& w)
{
  const int d = w.dim(), k = w.form_degree();
  if (k == d) throw std::invalid_argument("exterior_derivative: form of top degree");
  PolyForm out(d, k + 1, w.poly_degree() - 1);
  const auto& alts = alternators(d, k);
  for (int a = 0; a < w.n_components(); ++a) {
    for (int j = 0; j < d; ++j) {
      Alternator dj{d, {j}};
      int s = wedge_sign(dj, alts[a]);
      if (s == 0) continue;
      int t = alternator_index(alternator_union(dj, alts[a]));
      out.component(t) += static_cast<double>(s) * w.component(a).derivative(j).with_degree(out.poly_degree());
    }
  }
  return out;
}

PolyForm koszul(const PolyForm& w)
{
  const int d = w.dim(), k = w.form_degree();
  if (k == 0) throw std::invalid_argument("koszul: 0-forms have no Koszul image");
  PolyForm out(d, k - 1, w.poly_degree() + 1);
  const auto& alts = alternators(d, k);
  for (int a = 0; a < w.n_components(); ++a) {
    const auto& beta = alts[a];
    for (int i = 0; i < k; ++i) {
      Alternator rest{d, {}};
      for (int j = 0; j < k; ++j)
        if (j != i) rest.idx.push_back(beta.idx[j]);
      double s = (i % 2) ? -1.0 : 1.0;
      Polynomial p = Polynomial::coordinate(d, beta.idx[i]) * w.component(a);
      out.component(alternator_index(rest)) += s * p.with_degree(out.poly_degree());
    }
  }
  return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b)
{
  const int d = a.dim();
  const int ka = a.form_degree(), kb = b.form_degree();
  if (ka + kb > d) throw std::invalid_argument("wedge: degree exceeds dimension");
  PolyForm out(d, ka + kb, a.poly_degree() + b.poly_degree());
  const auto& A = alternators(d, ka);
  const auto& B = alternators(d, kb);
  for (int i = 0; i < a.n_components(); ++i)
    for (int j = 0; j < b.n_components(); ++j) {
      int s = wedge_sign(A[i], B[j]);
      if (s == 0) continue;
      int t = alternator_index(alternator_union(A[i], B[j]));
      out.component(t) += static_cast<double>(s) * (a.component(i) * b.component(j));
    }
  return out;
}

PolyForm multiply(const Polynomial& p, const PolyForm& w)
{
  PolyForm out(w.dim(), w.form_degree(), w.poly_degree() + p.degree());
  for (int a = 0; a < w.n_components(); ++a) out.component(a) = (p * w.component(a)).with_degree(out.poly_degree());
  return out;
}

PolyForm pullback(const PolyForm& w, const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
{
  const int d = w.dim(), k = w.form_degree();
  const int m = static_cast<int>(A.cols());
  if (k > m) throw std::invalid_argument("pullback: form degree exceeds target dimension");
  PolyForm out(m, k, w.poly_degree());
  const auto& src = alternators(d, k);
  const auto& dst = alternators(m, k);
  for (int a = 0; a < w.n_components(); ++a) {
    bool composed = false;
    Polynomial pa;
    for (size_t t = 0; t < dst.size(); ++t) {
      double det = 1.0;
      if (k > 0) {
        Eigen::MatrixXd sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub(i, j) = A(src[a].idx[i], dst[t].idx[j]);
        det = sub.determinant();
      }
      if (det == 0.0) continue;
      if (!composed) {
        pa = w.component(a).compose_affine(A, b);
        composed = true;
      }
      out.component(t) += det * pa;
    }
  }
  return out;
}

PolyForm hodge_star(const PolyForm& w, double h)
{
  const int d = w.dim(), k = w.form_degree();
  PolyForm out(d, d - k, w.poly_degree());
  const auto& alts = alternators(d, k);
  const double scale = std::pow(h, d - 2 * k);
  for (int a = 0; a < w.n_components(); ++a) {
    auto [s, c] = hodge_star_basis(alts[a]);
    out.component(alternator_index(c)) += (s * scale) * w.component(a);
  }
  return out;
}

PolyForm hodge_star_inverse(const PolyForm& w, double h)
{
  const int d = w.dim(), k = w.form_degree();
  double s = ((k * (d - k)) % 2) ? -1.0 : 1.0;
  return s * hodge_star(w, h);
}

PolyForm trace(const PolyForm& w, const Frame& from, const Frame& to)
{
  auto [A, b] = from.embedding_of(to);
  return pullback(w, A, b);
}

namespace {
// sum over alternators and monomial pairs using precomputed moments
double paired_integral(const PolyForm& a, const PolyForm& b, const std::vector<double>& mom,
                       const MonomialTable& big)
{
  const MonomialTable& ta = a.component(0).table();
  const MonomialTable& tb = b.component(0).table();
  const int d = a.dim();
  std::vector<int> e(d);
  double s = 0.0;
  for (int c = 0; c < a.n_components(); ++c) {
    const auto& pa = a.component(c).coeffs();
    const auto& pb = b.component(c).coeffs();
    for (int i = 0; i < ta.size(); ++i) {
      if (pa[i] == 0.0) continue;
      const auto& ei = ta.exponents(i);
      double acc = 0.0;
      for (int j = 0; j < tb.size(); ++j) {
        if (pb[j] == 0.0) continue;
        const auto& ej = tb.exponents(j);
        for (int v = 0; v < d; ++v) e[v] = ei[v] + ej[v];
        acc += pb[j] * mom[big.index_of(e)];
      }
      s += pa[i] * acc;
    }
  }
  return s;
}
} // namespace

double inner_product(const Domain& dom, const PolyForm& a, const PolyForm& b)
{
  if (a.dim() != dom.dim() || b.dim() != dom.dim() || a.form_degree() != b.form_degree())
    throw std::invalid_argument("inner_product: incompatible forms");
  const int deg = a.poly_degree() + b.poly_degree();
  auto mom = dom.moments(deg);
  auto big = MonomialTable::get(dom.dim(), deg);
  return std::pow(dom.h(), -2 * a.form_degree()) * paired_integral(a, b, mom, *big);
}

Eigen::MatrixXd gram_matrix(const Domain& dom, const std::vector<PolyForm>& a,
                            const std::vector<PolyForm>& b)
{
  Eigen::MatrixXd G(a.size(), b.size());
  if (a.empty() || b.empty()) return G;
  int ra = 0, rb = 0;
  for (const auto& x : a) ra = std::max(ra, x.poly_degree());
  for (const auto& x : b) rb = std::max(rb, x.poly_degree());
  auto mom = dom.moments(ra + rb);
  auto big = MonomialTable::get(dom.dim(), ra + rb);
  const double scale = std::pow(dom.h(), -2 * a[0].form_degree());
  const bool symmetric = (&a == &b);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = symmetric ? i : 0; j < b.size(); ++j) {
      if (a[i].form_degree() != b[j].form_degree() || a[i].dim() != dom.dim())
        throw std::invalid_argument("gram_matrix: incompatible forms");
      G(i, j) = scale * paired_integral(a[i], b[j], mom, *big);
      if (symmetric) G(j, i) = G(i, j);
    }
  return G;
}

double integrate_top(const Domain& dom, const PolyForm& w)
{
  if (w.form_degree() != dom.dim()) throw std::invalid_argument("integrate_top: not a top form");
  return std::pow(dom.h(), -dom.dim()) * dom.integrate(w.component(0));
}

double integrate_on_simplex(const PolyForm& w, const Eigen::MatrixXd& local_pts)
{
  const int k = static_cast<int>(local_pts.cols()) - 1;
  if (w.form_degree() != k) throw std::invalid_argument("integrate_on_simplex: degree mismatch");
  Eigen::MatrixXd A(w.dim(), k);
  for (int i = 0; i < k; ++i) A.col(i) = local_pts.col(i + 1) - local_pts.col(0);
  PolyForm p = pullback(w, A, local_pts.col(0));
  return p.component(0).integrate_reference_simplex();
}

} // namespace formdeck
