// Polynomial differential forms on a cell, in the cell's scaled local
// coordinates y.  A form of degree k is stored as one polynomial per
// alternator of degree k (lexicographic order).

#ifndef FORMDECK_POLYFORM_HPP
#define FORMDECK_POLYFORM_HPP

#include <formdeck/exterior.hpp>
#include <formdeck/geometry.hpp>
#include <formdeck/polynomial.hpp>

#include <Eigen/Dense>
#include <vector>

namespace formdeck {

class PolyForm {
public:
  PolyForm() = default;
  /// Zero form of degree k with polynomial degree <= r in d variables
  PolyForm(int d, int k, int r);

  int dim() const { return m_d; }
  int form_degree() const { return m_k; }
  int poly_degree() const { return m_r; }
  int n_components() const { return static_cast<int>(m_comp.size()); }
  Polynomial& component(int a) { return m_comp[a]; }
  const Polynomial& component(int a) const { return m_comp[a]; }

  /// Coordinates in the monomial x alternator basis (alternator-major)
  Eigen::VectorXd coefficients() const;
  static PolyForm from_coefficients(int d, int k, int r, const Eigen::VectorXd& c);
  /// Dimension of P_r Lambda^k(R^d)
  static int space_dim(int d, int k, int r);
  /// Basis element number i of P_r Lambda^k(R^d)
  static PolyForm basis_element(int d, int k, int r, int i);

  PolyForm with_degree(int r) const;
  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator*=(double s);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a += (-1.0) * b; }
  friend PolyForm operator*(double s, PolyForm a) { return a *= s; }

  double max_abs() const;

private:
  int m_d = 0, m_k = 0, m_r = 0;
  std::vector<Polynomial> m_comp;
};

PolyForm exterior_derivative(const PolyForm& w);
/// Koszul operator: contraction with the position vector field y
PolyForm koszul(const PolyForm& w);
PolyForm wedge(const PolyForm& a, const PolyForm& b);
/// Pullback through y = A z + b (A is d x m)
PolyForm pullback(const PolyForm& w, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);
/// Hodge star in the local coordinates of a frame with scale h (orientation
/// of the frame axes)
PolyForm hodge_star(const PolyForm& w, double h);
PolyForm hodge_star_inverse(const PolyForm& w, double h);
/// Multiply by a scalar polynomial
PolyForm multiply(const Polynomial& p, const PolyForm& w);

/// Trace from the frame `from` onto the frame `to` of a subset of its region
PolyForm trace(const PolyForm& w, const Frame& from, const Frame& to);

/// L2 inner product on a domain
double inner_product(const Domain& dom, const PolyForm& a, const PolyForm& b);
/// Gram matrix between two lists of forms of equal degree
Eigen::MatrixXd gram_matrix(const Domain& dom, const std::vector<PolyForm>& a,
                            const std::vector<PolyForm>& b);
inline Eigen::MatrixXd gram_matrix(const Domain& dom, const std::vector<PolyForm>& a)
{
  return gram_matrix(dom, a, a);
}
/// Integral of a top-degree form over the (oriented) domain
double integrate_top(const Domain& dom, const PolyForm& w);
/// Integral of a k-form over the oriented k-simplex with the given vertices
/// (local coordinates, d x (k+1))
double integrate_on_simplex(const PolyForm& w, const Eigen::MatrixXd& local_pts);

} // namespace formdeck

#endif
