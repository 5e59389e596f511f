// Shared fixtures for the unit tests.

#ifndef FORMDECK_TEST_SUPPORT_HPP
#define FORMDECK_TEST_SUPPORT_HPP

#include <formdeck/mesh_gen.hpp>
#include <formdeck/polyform.hpp>

#include <random>

namespace formdeck::test {

inline PolyForm random_form(int d, int k, int r, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolyForm w(d, k, r);
  for (int a = 0; a < w.n_components(); ++a)
    for (auto& x : w.component(a).coeffs()) x = u(rng);
  return w;
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& rng)
{
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

/// Unit square as one quadrilateral cut along the diagonal 0-2
inline Mesh square_fixture()
{
  Eigen::MatrixXd V(2, 4);
  V << 0, 1, 1, 0,
       0, 0, 1, 1;
  return build_polytopal_mesh(V, {{0, 1, 2}, {0, 2, 3}}, {0, 0});
}

inline double max_abs(const Eigen::MatrixXd& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

} // namespace formdeck::test

#endif
