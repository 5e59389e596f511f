#include <formdeck/trimmed.hpp>
#include <formdeck/linalg.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace formdeck {

namespace {
std::vector<PolyForm> monomial_forms(int d, int k, int r)
{
  std::vector<PolyForm> out;
  if (k < 0 || k > d || r < 0) return out;
  const int n = PolyForm::space_dim(d, k, r);
  for (int i = 0; i < n; ++i) out.push_back(PolyForm::basis_element(d, k, r, i));
  return out;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

double sym_extreme(const Eigen::MatrixXd& G, bool largest)
{
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  return largest ? es.eigenvalues().maxCoeff() : es.eigenvalues().minCoeff();
}
} // namespace

std::vector<PolyForm> orthonormalize(const Domain& dom, const std::vector<PolyForm>& forms, double rel_tol)
{
  if (forms.empty()) return {};
  const int d = forms[0].dim(), k = forms[0].form_degree();
  int R = 0;
  for (const auto& w : forms) R = std::max(R, w.poly_degree());
  auto mono = monomial_forms(d, k, R);
  Eigen::MatrixXd Rt = gram_root(gram_matrix(dom, mono));
  Eigen::MatrixXd C(mono.size(), forms.size());
  for (size_t j = 0; j < forms.size(); ++j) C.col(j) = forms[j].with_degree(R).coefficients();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Rt * C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  Eigen::MatrixXd B = C * svd.matrixV().leftCols(rank) * s.head(rank).cwiseInverse().asDiagonal();
  std::vector<PolyForm> out;
  for (int i = 0; i < rank; ++i) out.push_back(PolyForm::from_coefficients(d, k, R, B.col(i)));
  return out;
}

std::vector<PolyForm> full_basis(const Domain& dom, int r, int k)
{
  return orthonormalize(dom, monomial_forms(dom.dim(), k, r));
}

std::vector<PolyForm> exact_basis(const Domain& dom, int r, int k)
{
  if (k < 1 || k > dom.dim() || r < 0) return {};
  std::vector<PolyForm> span;
  for (const auto& m : monomial_forms(dom.dim(), k - 1, r)) span.push_back(exterior_derivative(m));
  return orthonormalize(dom, span);
}

std::vector<PolyForm> koszul_basis(const Domain& dom, int r, int k)
{
  if (k < 0 || k + 1 > dom.dim() || r < 0) return {};
  std::vector<PolyForm> span;
  for (const auto& m : monomial_forms(dom.dim(), k + 1, r)) span.push_back(koszul(m));
  return orthonormalize(dom, span);
}

int trimmed_dim(int d, int r, int k)
{
  if (k == 0) return monomial_count(d, r);
  if (r <= 0) return 0;
  // (r+k-1 choose k) (r+d choose d-k)
  return static_cast<int>(binomial(r + k - 1, k) * binomial(r + d, d - k));
}

PolyForm TrimmedBasis::expand(const Eigen::VectorXd& c) const
{
  PolyForm w(dim, k, r);
  for (int i = 0; i < size(); ++i) w += c(i) * elements[i];
  return w;
}

TrimmedBasis build_trimmed_basis(const Domain& dom, int r, int k)
{
  TrimmedBasis tb;
  tb.dim = dom.dim();
  tb.r = r;
  tb.k = k;
  if (k == 0) {
    tb.elements = full_basis(dom, r, 0);
    tb.n_exact = tb.size();
  } else {
    auto ex = exact_basis(dom, r, k);
    auto kz = r >= 1 ? koszul_basis(dom, r - 1, k) : std::vector<PolyForm>{};
    tb.n_exact = static_cast<int>(ex.size());
    tb.n_koszul = static_cast<int>(kz.size());
    tb.elements = ex;
    tb.elements.insert(tb.elements.end(), kz.begin(), kz.end());
  }
  for (auto& e : tb.elements) e = e.with_degree(std::max(r, 0));
  if (tb.size() != trimmed_dim(tb.dim, r, k))
    throw std::runtime_error("build_trimmed_basis: dimension mismatch");
  tb.gram = gram_matrix(dom, tb.elements);
  if (tb.size() > 0) {
    tb.factor.compute(tb.gram);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tb.gram, Eigen::EigenvaluesOnly);
    tb.condition = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  }
  return tb;
}

Eigen::MatrixXd basis_moments(const Domain& dom, const std::vector<PolyForm>& basis,
                              const std::vector<PolyForm>& forms)
{
  return gram_matrix(dom, basis, forms);
}

Eigen::VectorXd trimmed_project(const Domain& dom, const TrimmedBasis& basis, const PolyForm& w,
                                double cond_cap)
{
  if (basis.size() == 0) return Eigen::VectorXd();
  if (!(basis.condition <= cond_cap))
    throw std::runtime_error("trimmed_project: Gram condition number exceeds cap");
  Eigen::VectorXd rhs(basis.size());
  for (int i = 0; i < basis.size(); ++i) rhs(i) = inner_product(dom, basis.elements[i], w);
  return basis.factor.solve(rhs);
}

double max_principal_cosine(const Domain& dom, const std::vector<PolyForm>& u,
                            const std::vector<PolyForm>& v)
{
  if (u.empty() || v.empty()) return 0.0;
  return singular_values(gram_matrix(dom, u, v))(0);
}

LocalConstants measure_local_constants(const Domain& dom, const std::vector<const Domain*>& boundary,
                                       int r, int j)
{
  const int d = dom.dim();
  LocalConstants lc;
  lc.d_norm = lc.koszul_norm = lc.d_inverse = lc.koszul_inverse = lc.trace = lc.decomposition = nan();

  auto images_norm = [&](const std::vector<PolyForm>& in, auto op, bool largest) {
    std::vector<PolyForm> img;
    for (const auto& b : in) img.push_back(op(b));
    return std::sqrt(std::max(0.0, sym_extreme(gram_matrix(dom, img), largest)));
  };

  if (j < d && r >= 1) {
    auto B = full_basis(dom, r, j);
    lc.d_norm = images_norm(B, [](const PolyForm& w) { return exterior_derivative(w); }, true);
  }
  if (j >= 1 && j <= d) {
    auto B = full_basis(dom, r, j);
    lc.koszul_norm = images_norm(B, [](const PolyForm& w) { return koszul(w); }, true);
  }
  if (j >= 1 && j <= d) {
    // kappa P_r Lambda^j are (j-1)-forms; d is injective on them
    auto U = koszul_basis(dom, r, j - 1);
    if (!U.empty())
      lc.d_inverse = 1.0 / images_norm(U, [](const PolyForm& w) { return exterior_derivative(w); }, false);
  }
  if (j + 1 <= d && r >= 1) {
    auto U = exact_basis(dom, r - 1, j + 1);
    if (!U.empty())
      lc.koszul_inverse = 1.0 / images_norm(U, [](const PolyForm& w) { return koszul(w); }, false);
  }
  if (j <= d - 1 && !boundary.empty()) {
    auto B = full_basis(dom, r, j);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(B.size(), B.size());
    for (const Domain* bd : boundary) {
      std::vector<PolyForm> tr;
      for (const auto& b : B) tr.push_back(trace(b, dom.frame(), bd->frame()));
      T += gram_matrix(*bd, tr);
    }
    lc.trace = std::sqrt(std::max(0.0, sym_extreme(T, true)));
  }
  if (j >= 0 && j <= d) {
    auto U = exact_basis(dom, r + 1, j);
    auto V = r >= 1 ? koszul_basis(dom, r - 1, j) : std::vector<PolyForm>{};
    double c = max_principal_cosine(dom, U, V);
    lc.decomposition = std::sqrt(2.0 / (1.0 - c));
  }
  return lc;
}

} // namespace formdeck
