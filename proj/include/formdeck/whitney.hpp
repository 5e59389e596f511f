// Lowest-order Whitney forms on the simplicial submesh S_h.

#ifndef FORMDECK_WHITNEY_HPP
#define FORMDECK_WHITNEY_HPP

#include <formdeck/mesh.hpp>
#include <formdeck/polyform.hpp>

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <vector>

namespace formdeck {

/// A piecewise polynomial form: one PolyForm per n-simplex, in that simplex's frame
using PiecewiseForm = std::vector<PolyForm>;

class WhitneyComplex {
public:
  explicit WhitneyComplex(const Mesh& m);

  const Mesh& mesh() const { return m_mesh; }
  int dim() const { return m_mesh.dim(); }
  /// Frame: barycentre, identity axes, h = diameter of the simplex
  const Domain& simplex_domain(int t) const { return m_dom[t]; }

  /// Global ids of the k-faces of the n-simplex t (ascending)
  const std::vector<int>& faces(int t, int k) const { return m_faces[k][t]; }
  /// Whitney forms of t attached to faces(t, k), oriented like the global faces
  const std::vector<PolyForm>& local_basis(int t, int k) const { return m_basis[k][t]; }
  /// Barycentric coordinates of t in its local frame, ordered like the stored vertices
  const std::vector<PolyForm>& barycentric(int t) const { return m_lambda[t]; }

  /// (int_{F_i} phi_{F_j}) over the k-faces of t
  Eigen::MatrixXd de_rham_integrals(int t, int k) const;
  /// Measured value of int_F phi_F (identical for every face of every simplex)
  double diagonal_constant(int k) const { return m_diag[k]; }

  /// W^k; since int_F phi_F = 1/k!, d W^k = (k+1) W^{k+1} delta
  PiecewiseForm whitney_map(int k, const Eigen::VectorXd& cochain) const;
  /// Integrals over every k-simplex, divided by the diagonal constant
  Eigen::VectorXd de_rham_map(int k, const PiecewiseForm& w) const;
  /// Largest discrepancy between traces of w on k-faces seen from different simplices
  double conformity_defect(int k, const PiecewiseForm& w) const;

  /// Global L2 Gram matrix of the Whitney k-forms
  const Eigen::MatrixXd& gram(int k) const { return m_gram[k]; }
  double l2_norm(const PiecewiseForm& w) const;

  /// Linear map xi -> argmin{ |lambda|_{L2} : delta lambda = xi } on simplicial cochains
  const Eigen::MatrixXd& min_norm_operator(int k) const;

  struct MinNormResult {
    Eigen::VectorXd cochain;
    PiecewiseForm form;
    double residual = 0.0; // relative |delta lambda - xi|
  };
  /// Minimal L2-norm Whitney k-form whose exterior derivative is the given
  /// Whitney (k+1)-form; throws when the datum is not exact
  MinNormResult min_norm_preimage(int k, const PiecewiseForm& xi) const;
  MinNormResult min_norm_preimage_cochain(int k, const Eigen::VectorXd& xi) const;

private:
  const Mesh& m_mesh;
  std::vector<Domain> m_dom;
  std::vector<std::vector<PolyForm>> m_lambda;
  std::vector<std::vector<std::vector<int>>> m_faces;
  std::vector<std::vector<std::vector<PolyForm>>> m_basis;
  std::vector<double> m_diag;
  std::vector<Eigen::MatrixXd> m_gram;
  mutable std::mutex m_mutex;
  mutable std::vector<std::shared_ptr<Eigen::MatrixXd>> m_minnorm;
};

/// Whitney form sum_i (-1)^i lambda_{s_i} d lambda_{s_0} ^ ... (omit i) ... ^ d lambda_{s_k}
PolyForm whitney_form(const std::vector<PolyForm>& lambda, const std::vector<int>& seq);

} // namespace formdeck

#endif
