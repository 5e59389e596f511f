// Local frames and integration domains.
//
// Every cell (and every simplex used on its own) carries a frame: an origin,
// an orthonormal set of axes spanning its affine hull and a length scale h.
// Polynomial forms live in the scaled local coordinates y = axes^T (x - origin) / h.

#ifndef FORMDECK_GEOMETRY_HPP
#define FORMDECK_GEOMETRY_HPP

#include <formdeck/polynomial.hpp>

#include <Eigen/Dense>
#include <mutex>
#include <vector>

namespace formdeck {

struct Frame {
  int dim = 0;
  Eigen::VectorXd origin;
  Eigen::MatrixXd axes; // ambient x dim, orthonormal columns
  double h = 1.0;

  int ambient() const { return static_cast<int>(origin.size()); }
  Eigen::VectorXd to_local(const Eigen::VectorXd& x) const;
  Eigen::VectorXd to_ambient(const Eigen::VectorXd& y) const;
  /// Affine map (A, b) with y_this = A y_sub + b for a frame of a subset
  std::pair<Eigen::MatrixXd, Eigen::VectorXd> embedding_of(const Frame& sub) const;
};

/// Orthonormal frame from the edge vectors of a simplex (columns of `pts`,
/// ambient x (k+1)), oriented like the vertex order
Frame simplex_frame(const Eigen::MatrixXd& pts, const Eigen::VectorXd& origin, double h);

/// Signed volume factor det(axes^T [p_1 - p_0, ...]) of a simplex in a frame
double orientation_in_frame(const Frame& f, const Eigen::MatrixXd& pts);

/// Measure of a k-simplex given by k+1 ambient points
double simplex_measure(const Eigen::MatrixXd& pts);
/// Max pairwise distance
double diameter(const Eigen::MatrixXd& pts);
/// Inradius k|S| / sum of facet measures (half-length for segments)
double simplex_inradius(const Eigen::MatrixXd& pts);

/// A frame plus a partition of its region into simplices
class Domain {
public:
  Domain() = default;
  /// simplices: ambient coordinates, one (ambient x (dim+1)) block per simplex
  Domain(Frame frame, const std::vector<Eigen::MatrixXd>& simplices);
  Domain(const Domain& o) : m_frame(o.m_frame), m_local(o.m_local), m_measure(o.m_measure) {}
  Domain& operator=(const Domain& o)
  {
    m_frame = o.m_frame;
    m_local = o.m_local;
    m_measure = o.m_measure;
    m_moments.clear();
    m_moment_degree = -1;
    return *this;
  }

  const Frame& frame() const { return m_frame; }
  int dim() const { return m_frame.dim; }
  double h() const { return m_frame.h; }
  double measure() const { return m_measure; }
  /// Member simplices in local (scaled) coordinates, dim x (dim+1)
  const std::vector<Eigen::MatrixXd>& local_simplices() const { return m_local; }

  /// Physical integral of a polynomial in local coordinates
  double integrate(const Polynomial& p) const;
  /// Moments int y^alpha dx for all monomials of degree <= deg
  std::vector<double> moments(int deg) const;

private:
  Frame m_frame;
  std::vector<Eigen::MatrixXd> m_local;
  double m_measure = 0.0;
  mutable std::mutex m_mutex;
  mutable std::vector<double> m_moments;
  mutable int m_moment_degree = -1;
};

/// Moments of monomials of degree <= deg over one simplex (local coordinates,
/// physical measure scaled by h^dim)
std::vector<double> simplex_moments(const Eigen::MatrixXd& local_pts, double h, int deg);

} // namespace formdeck

#endif
