#include <formdeck/poincare.hpp>
#include <formdeck/linalg.hpp>
#include <formdeck/mesh_gen.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace formdeck {

namespace {
double parity(int k) { return (k % 2) ? -1.0 : 1.0; }

Eigen::MatrixXd lower_root(const Eigen::MatrixXd& M)
{
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("norm Gram matrix is not positive definite");
  return llt.matrixL();
}
} // namespace

DDRLifting::DDRLifting(const DDRComplex& X, const CochainLift& L, int k) : m_X(X), m_L(L), m_k(k)
{
  const Mesh& m = X.mesh();
  const int n = m.dim();
  if (k >= n) throw std::invalid_argument("DDRLifting: k must be below the mesh dimension");
  const int r = X.degree();
  const int N1 = X.size(k + 1);
  m_T = Eigen::MatrixXd::Zero(X.size(k), N1);

  // xi_f = int_f sigma_f on (k+1)-cells
  m_integrals = Eigen::MatrixXd::Zero(m.num_cells(k + 1), N1);
  for (int c = 0; c < m.num_cells(k + 1); ++c) {
    const TrimmedBasis& tb = X.trimmed(k + 1, c, 0);
    for (int i = 0; i < tb.size(); ++i)
      m_integrals(c, X.offset(k + 1, k + 1, c) + i) = X.domain(k + 1, c).integrate(tb.elements[i].component(0));
  }
  Eigen::MatrixXd lambda = L.poincare_operator(k) * m_integrals;

  // k-cells: constant density lambda / |f|
  for (int c = 0; c < m.num_cells(k); ++c) {
    const Domain& dom = X.domain(k, c);
    const TrimmedBasis& tb = X.trimmed(k, c, 0);
    PolyForm one(k, 0, 0);
    one.component(0)[0] = 1.0 / dom.measure();
    Eigen::VectorXd coef = trimmed_project(dom, tb, one);
    m_T.middleRows(X.offset(k, k, c), tb.size()) = coef * lambda.row(c);
  }

  // higher cells: star tau_f in d P_r Lambda^{d-k-1}(f)
  for (int d = k + 1; d <= n; ++d)
    for (int c = 0; c < m.num_cells(d); ++c) {
      const Domain& dom = X.domain(d, c);
      const int j = d - k;
      auto mu = r >= 1 ? koszul_basis(dom, r - 1, j - 1) : std::vector<PolyForm>{};
      const TrimmedBasis& tb = X.trimmed(d, c, j);
      if (mu.empty() || tb.size() == 0) continue;
      std::vector<PolyForm> dmu;
      for (const auto& x : mu) dmu.push_back(exterior_derivative(x).with_degree(r));
      Eigen::MatrixXd G = gram_matrix(dom, dmu);
      // right-hand side as a map on sigma
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(mu.size(), N1);
      const TrimmedBasis& sb = X.trimmed(d, c, j - 1);
      if (sb.size() > 0)
        rhs.middleCols(X.offset(k + 1, d, c), sb.size()) = gram_matrix(dom, mu, sb.elements);
      for (const auto& b : m.cell(d, c).boundary) {
        const Domain& bd = X.domain(d - 1, b.cell);
        std::vector<PolyForm> tr;
        for (const auto& x : mu) tr.push_back(trace(x, dom.frame(), bd.frame()));
        auto phi = DDRComplex::monomials(d - 1, j - 1, r);
        Eigen::MatrixXd TP = gram_matrix(bd, tr, phi) * X.potential_matrix(k, d - 1, b.cell);
        const auto& cl = X.closure_dofs(k, d - 1, b.cell);
        Eigen::MatrixXd tau_cl(cl.size(), N1);
        for (size_t q = 0; q < cl.size(); ++q) tau_cl.row(q) = m_T.row(cl[q]);
        rhs -= b.sign * TP * tau_cl;
      }
      Eigen::MatrixXd a = parity(k + 1) * G.ldlt().solve(rhs);
      Eigen::MatrixXd coef = tb.factor.solve(gram_matrix(dom, tb.elements, dmu) * a);
      m_T.middleRows(X.offset(k, d, c), tb.size()) = coef;
    }
}

DDRLifting::Result DDRLifting::construct(const Eigen::VectorXd& omega, NormKind kind, bool with_quotient) const
{
  Result res;
  Eigen::VectorXd sigma = m_X.apply_d(m_k, omega);
  res.tau = m_T * sigma;
  Eigen::VectorXd back = m_X.apply_d(m_k, res.tau);
  res.residual = (back - sigma).norm() / std::max(1.0, sigma.norm());
  double ns = m_X.norm(m_k + 1, sigma, kind);
  if (ns > 0) {
    res.ratio = m_X.norm(m_k, res.tau, kind) / ns;
    if (with_quotient) res.optimal = quotient_norm(m_X, m_k, omega, kind) / ns;
  }
  const Mesh& m = m_X.mesh();
  for (int d = m_k + 1; d <= m.dim(); ++d)
    for (int c = 0; c < m.num_cells(d); ++c) {
      const TrimmedBasis& tb = m_X.trimmed(d, c, d - m_k);
      for (int i = tb.n_exact; i < tb.size(); ++i)
        res.koszul_defect = std::max(res.koszul_defect, std::abs(res.tau(m_X.offset(m_k, d, c) + i)));
    }
  return res;
}

double DDRLifting::constant(NormKind kind) const
{
  Eigen::MatrixXd D = m_X.d_matrix(m_k);
  Eigen::MatrixXd L0 = lower_root(m_X.norm_gram(m_k, kind));
  Eigen::MatrixXd L1 = lower_root(m_X.norm_gram(m_k + 1, kind));
  Eigen::MatrixXd Dh = L1.transpose() * D;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Dh, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * s(0)) ++rank;
  if (rank == 0) return 0.0;
  Eigen::MatrixXd Z = L0.transpose() * m_T * D * svd.matrixV().leftCols(rank) * s.head(rank).cwiseInverse().asDiagonal();
  return singular_values(Z)(0);
}

SpectralResult spectral_constant(const DDRComplex& X, int k, NormKind kind)
{
  SpectralResult out;
  Eigen::MatrixXd L0 = lower_root(X.norm_gram(k, kind));
  Eigen::MatrixXd D = X.d_matrix(k);
  if (k == X.dim()) {
    out.kernel_dim = X.size(k);
  } else {
    Eigen::MatrixXd L1 = lower_root(X.norm_gram(k + 1, kind));
    // L1^T D L0^{-T}
    Eigen::MatrixXd A = L0.triangularView<Eigen::Lower>().solve((L1.transpose() * D).transpose()).transpose();
    Eigen::VectorXd s = singular_values(A);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > 1e-9 * s(0)) ++rank;
    out.kernel_dim = X.size(k) - rank;
    if (rank < s.size()) out.kernel_sigma = s(rank);
    if (rank > 0) {
      out.gap = s(rank - 1);
      out.constant = 1.0 / out.gap;
    }
  }
  int prev_rank = k > 0 ? numerical_rank(X.d_matrix(k - 1), 1e-9) : 0;
  out.harmonic_dim = out.kernel_dim - prev_rank;
  return out;
}

double quotient_norm(const DDRComplex& X, int k, const Eigen::VectorXd& omega, NormKind kind)
{
  Eigen::MatrixXd M = X.norm_gram(k, kind);
  Eigen::MatrixXd K = null_space(X.d_matrix(k), 1e-9);
  if (K.cols() == 0) return X.norm(k, omega, kind);
  // omega - K a with a minimising the M-norm
  Eigen::VectorXd a = (K.transpose() * M * K).ldlt().solve(K.transpose() * M * omega);
  return X.norm(k, omega - K * a, kind);
}

std::vector<SweepRow> poincare_sweep(const std::string& family, int first_level, int levels, int k, int r,
                                     std::uint64_t seed, int samples)
{
  std::vector<SweepRow> rows;
  for (int l = first_level; l < first_level + levels; ++l) {
    auto t0 = std::chrono::steady_clock::now();
    Mesh m = generate(family, l, seed);
    if (k >= m.dim()) throw std::invalid_argument("poincare_sweep: k must be below the mesh dimension");
    DDRComplex X(m, r);
    WhitneyComplex W(m);
    CochainLift L(m, W);
    DDRLifting T(X, L, k);
    SweepRow row;
    row.family = family;
    row.level = l;
    row.k = k;
    row.r = r;
    for (int c = 0; c < m.num_cells(m.dim()); ++c) row.h = std::max(row.h, m.cell_h(m.dim(), c));
    row.rho = m.regularity_report().rho;
    row.n_cells = m.num_cells(m.dim());
    row.dofs = X.size(k);
    auto sp = spectral_constant(X, k);
    row.spectral = sp.constant;
    row.gap = sp.gap;
    row.kernel_sigma = sp.kernel_sigma;
    row.harmonic = sp.harmonic_dim;
    row.lifting = T.constant();
    row.cochain = L.poincare_constant(k);
    std::mt19937_64 rng(seed + l);
    std::normal_distribution<double> g;
    for (int s = 0; s < samples; ++s) {
      Eigen::VectorXd omega(X.size(k));
      for (int i = 0; i < omega.size(); ++i) omega(i) = g(rng);
      row.max_residual = std::max(row.max_residual, T.construct(omega).residual);
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);
  }
  return rows;
}

} // namespace formdeck
