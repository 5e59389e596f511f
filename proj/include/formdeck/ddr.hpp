// Discrete de Rham complex on polytopal meshes.
//
// A discrete k-form stores, on every cell f of dimension d >= k, the
// coefficients of star(omega_f) in the trimmed basis of P^-_r Lambda^{d-k}(f).
// Local potentials and discrete exterior derivatives are linear maps from the
// unknowns in the closure of f; they are assembled once as dense matrices.

#ifndef FORMDECK_DDR_HPP
#define FORMDECK_DDR_HPP

#include <formdeck/mesh.hpp>
#include <formdeck/trimmed.hpp>

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace formdeck {

/// A form on a cell given through its trace: (dim, id) -> trace in the cell frame
using TraceCallback = std::function<PolyForm(int, int)>;

/// Trace callback for a polynomial form written in ambient coordinates
TraceCallback ambient_form(const Mesh& m, const PolyForm& w);

enum class NormKind { Recursive, Explicit };

class DDRComplex {
public:
  DDRComplex(const Mesh& m, int r);

  const Mesh& mesh() const { return m_mesh; }
  int degree() const { return m_r; }
  int dim() const { return m_mesh.dim(); }

  /// Trimmed basis of P^-_r Lambda^j on a cell
  const TrimmedBasis& trimmed(int d, int c, int j) const { return m_trimmed[d][c][j]; }

  /// Number of unknowns of X^k_h
  int size(int k) const { return m_size[k]; }
  int offset(int k, int d, int c) const { return m_offset[k][d][c]; }
  int block_size(int k, int d, int c) const { return m_trimmed[d][c][d - k].size(); }
  /// Global unknowns in the closure of a cell
  const std::vector<int>& closure_dofs(int k, int d, int c) const { return m_closure_dofs[k][d][c]; }

  /// star P^k_f as a matrix: closure unknowns -> monomial coefficients of P_r Lambda^{d-k}(f)
  const Eigen::MatrixXd& potential_matrix(int k, int d, int c) const { return m_pot[k][d][c]; }
  /// star d^k_f: closure unknowns -> monomial coefficients of P_r Lambda^{d-k-1}(f)
  const Eigen::MatrixXd& local_d_matrix(int k, int d, int c) const { return m_locd[k][d][c]; }

  PolyForm potential(int k, int d, int c, const Eigen::VectorXd& x) const;
  PolyForm local_d(int k, int d, int c, const Eigen::VectorXd& x) const;
  /// Component star(omega_f) as a polynomial form
  PolyForm component(int k, int d, int c, const Eigen::VectorXd& x) const;

  /// Global discrete exterior derivative X^k -> X^{k+1}
  const Eigen::MatrixXd& d_matrix(int k) const { return m_D[k]; }
  Eigen::VectorXd apply_d(int k, const Eigen::VectorXd& x) const { return m_D[k] * x; }

  Eigen::VectorXd interpolate(int k, const TraceCallback& w) const;

  /// Block-diagonal Gram matrix of the discrete norm
  Eigen::MatrixXd norm_gram(int k, NormKind kind = NormKind::Explicit) const;
  double norm(int k, const Eigen::VectorXd& x, NormKind kind = NormKind::Explicit) const;
  /// Weights attached to each j-cell in the norm
  Eigen::VectorXd norm_weights(int k, int j, NormKind kind) const;

  /// max over cells of the relative defect of the defining identity of the
  /// local derivative, evaluated through wedge products and integrals
  double stokes_residual(int k, const Eigen::VectorXd& x) const;
  /// max over cells of |P(I w) - star tr w| / |star tr w| for polynomial w
  double potential_consistency(int k, const TraceCallback& w) const;

  const Domain& domain(int d, int c) const { return m_mesh.cell_domain(d, c); }
  /// Monomial basis of P_r Lambda^j on a d-cell
  static std::vector<PolyForm> monomials(int d, int j, int r);

private:
  const Mesh& m_mesh;
  int m_r;
  std::vector<std::vector<std::vector<TrimmedBasis>>> m_trimmed; // [d][c][j]
  std::vector<int> m_size;
  std::vector<std::vector<std::vector<int>>> m_offset;                // [k][d][c]
  std::vector<std::vector<std::vector<std::vector<int>>>> m_closure_dofs; // [k][d][c]
  std::vector<std::vector<std::vector<Eigen::MatrixXd>>> m_pot, m_locd;
  std::vector<Eigen::MatrixXd> m_D;

  void build_local(int k, int d, int c);
  /// Columns of a boundary cell's closure unknowns inside the closure of the cell
  std::vector<int> column_map(int k, int d, int c, int dsub, int csub) const;
};

} // namespace formdeck

#endif
