#include <formdeck/topology.hpp>
#include <formdeck/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace formdeck {

int complex_size(const Mesh& m, ComplexKind kind, int k)
{
  if (k < 0 || k > m.dim()) return 0;
  return kind == ComplexKind::Cellular ? m.num_cells(k) : m.num_simplices(k);
}

const IntSparse& boundary_matrix(const Mesh& m, ComplexKind kind, int k)
{
  return kind == ComplexKind::Cellular ? m.cellular_boundary(k) : m.simplicial_boundary(k);
}

IntSparse coboundary_matrix(const Mesh& m, ComplexKind kind, int k)
{
  if (k + 1 > m.dim()) return IntSparse(0, complex_size(m, kind, k));
  return IntSparse(boundary_matrix(m, kind, k + 1).transpose());
}

Eigen::VectorXd boundary(const Mesh& m, ComplexKind kind, int k, const Eigen::VectorXd& chain)
{
  if (k == 0) return Eigen::VectorXd();
  return boundary_matrix(m, kind, k).cast<double>() * chain;
}

Eigen::VectorXd coboundary(const Mesh& m, ComplexKind kind, int k, const Eigen::VectorXd& cochain)
{
  if (k + 1 > m.dim()) return Eigen::VectorXd();
  return boundary_matrix(m, kind, k + 1).cast<double>().transpose() * cochain;
}

Eigen::MatrixXd cycle_space(const Mesh& m, ComplexKind kind, int k)
{
  const int n = complex_size(m, kind, k);
  if (k == 0) return Eigen::MatrixXd::Identity(n, n);
  return null_space(Eigen::MatrixXd(boundary_matrix(m, kind, k).cast<double>()));
}

std::vector<int> betti_numbers(const Mesh& m, ComplexKind kind)
{
  const int n = m.dim();
  std::vector<int> rank(n + 2, 0);
  for (int k = 1; k <= n; ++k) rank[k] = numerical_rank(Eigen::MatrixXd(boundary_matrix(m, kind, k).cast<double>()));
  std::vector<int> b(n + 1);
  for (int k = 0; k <= n; ++k) b[k] = complex_size(m, kind, k) - rank[k] - rank[k + 1];
  return b;
}

Eigen::MatrixXd local_boundary(const Mesh& m, int k, const std::vector<int>& rows, const std::vector<int>& cols)
{
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(rows.size(), cols.size());
  if (k == 0) return B;
  std::map<int, int> r;
  for (size_t i = 0; i < rows.size(); ++i) r[rows[i]] = static_cast<int>(i);
  const IntSparse& bd = m.simplicial_boundary(k);
  for (size_t c = 0; c < cols.size(); ++c)
    for (IntSparse::InnerIterator it(bd, cols[c]); it; ++it) {
      auto p = r.find(static_cast<int>(it.row()));
      if (p != r.end()) B(p->second, c) = it.value();
    }
  return B;
}

SpanningSet construct_spanning_set(const Mesh& m, int d, int f, int k)
{
  if (k > d) throw std::invalid_argument("construct_spanning_set: k exceeds cell dimension");
  SpanningSet out;
  out.cell_dim = d;
  out.cell = f;
  out.k = k;
  const auto& K = m.cell_simplices(d, f, k);
  std::vector<int> Kb = d > 0 ? m.cell_boundary_simplices(d, f, k) : std::vector<int>{};
  std::set<int> boundary_set(Kb.begin(), Kb.end());
  std::vector<int> V(Kb);
  std::vector<int> rows = k > 0 ? m.cell_simplices(d, f, k - 1) : std::vector<int>{};
  for (int F : K) {
    if (boundary_set.count(F)) continue;
    std::vector<int> cols(V);
    cols.push_back(F);
    Eigen::MatrixXd A = local_boundary(m, k, rows, cols);
    Eigen::MatrixXd Aug(A.rows() + 1, A.cols());
    Aug << A, Eigen::RowVectorXd::Unit(cols.size(), cols.size() - 1);
    bool feasible = k == 0 || numerical_rank(Aug) > numerical_rank(A);
    if (!feasible) {
      V.push_back(F);
      continue;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Unit(Aug.rows(), Aug.rows() - 1);
    Eigen::VectorXd z = least_norm_solve(Aug, rhs);
    if (relative_residual(Aug, z, rhs) > 1e-9) throw std::runtime_error("construct_spanning_set: inconsistent pairing");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m.num_simplices(k));
    for (size_t i = 0; i < cols.size(); ++i) g(cols[i]) = z(i);
    out.simplices.push_back(F);
    out.cycles.push_back(g);
  }
  for (int F : V)
    if (!boundary_set.count(F)) out.rejected.push_back(F);
  return out;
}

int spanning_set_expected_size(const Mesh& m, int d, int f, int k)
{
  auto cycles_dim = [&](const std::vector<int>& cols, const std::vector<int>& rows) {
    if (k == 0) return static_cast<int>(cols.size());
    return static_cast<int>(cols.size()) - numerical_rank(local_boundary(m, k, rows, cols));
  };
  int full = cycles_dim(m.cell_simplices(d, f, k), k > 0 ? m.cell_simplices(d, f, k - 1) : std::vector<int>{});
  int bnd = 0;
  if (d > 0 && k < d)
    bnd = cycles_dim(m.cell_boundary_simplices(d, f, k), k > 0 ? m.cell_boundary_simplices(d, f, k - 1) : std::vector<int>{});
  return full - bnd;
}

Preimage boundary_preimage(const Mesh& m, int d, int f, int k, const Eigen::VectorXd& z)
{
  if (k + 1 > d) throw std::invalid_argument("boundary_preimage: no (k+1)-simplices in the cell");
  const auto& rows = m.cell_simplices(d, f, k);
  const auto& cols = m.cell_simplices(d, f, k + 1);
  Eigen::VectorXd zl(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) zl(i) = z(rows[i]);
  if (std::abs(z.norm() - zl.norm()) > 1e-12 * std::max(1.0, z.norm()))
    throw std::invalid_argument("boundary_preimage: chain not supported in the cell");
  Eigen::MatrixXd B = local_boundary(m, k + 1, rows, cols);
  Eigen::VectorXd w = least_norm_solve(B, zl);
  if (relative_residual(B, w, zl) > 1e-9) throw std::runtime_error("boundary_preimage: chain is not a boundary in the cell");
  Preimage p;
  p.chain = Eigen::VectorXd::Zero(m.num_simplices(k + 1));
  for (size_t i = 0; i < cols.size(); ++i) p.chain(cols[i]) = w(i);
  double r = numerical_rank(B);
  p.cap = std::pow(r, r / 2.0);
  p.ratio = zl.norm() > 0 ? w.norm() / zl.norm() : 0.0;
  if (p.ratio > p.cap * (1 + 1e-9) && p.cap > 0) throw std::runtime_error("boundary_preimage: norm ratio exceeds the Cramer cap");
  return p;
}

} // namespace formdeck
