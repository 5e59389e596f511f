#include "support.hpp"

#include <formdeck/trimmed.hpp>

#include <gtest/gtest.h>

using namespace formdeck;
using test::random_form;

namespace {

Domain square_domain()
{
  Eigen::MatrixXd A(2, 3), B(2, 3);
  A << 0, 1, 1,
       0, 0, 1;
  B << 0, 1, 0,
       0, 1, 1;
  Frame f;
  f.dim = 2;
  f.origin = Eigen::Vector2d(0.5, 0.5);
  f.axes = Eigen::MatrixXd::Identity(2, 2);
  f.h = std::sqrt(2.0);
  return Domain(f, {A, B});
}

Domain cube_corner()
{
  Eigen::MatrixXd T(3, 4);
  T << 0, 1, 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1;
  Frame f = simplex_frame(T, Eigen::Vector3d(0.25, 0.25, 0.25), std::sqrt(2.0));
  return Domain(f, {T});
}

} // namespace

TEST(Trimmed, KnownDimensions)
{
  EXPECT_EQ(trimmed_dim(2, 1, 1), 3);  // Raviart-Thomas / Nedelec lowest order
  EXPECT_EQ(trimmed_dim(3, 1, 1), 6);
  EXPECT_EQ(trimmed_dim(3, 1, 2), 4);
  EXPECT_EQ(trimmed_dim(3, 2, 1), 20);
  EXPECT_EQ(trimmed_dim(2, 2, 0), 6);
  EXPECT_EQ(trimmed_dim(3, 2, 3), 4);
  EXPECT_EQ(trimmed_dim(2, 0, 1), 0);
}

TEST(Trimmed, BasisSizesMatchDimensionFormula)
{
  Domain s = square_domain(), t = cube_corner();
  for (int r = 0; r <= 3; ++r)
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(build_trimmed_basis(s, r, k).size(), trimmed_dim(2, r, k));
  for (int r = 0; r <= 2; ++r)
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(build_trimmed_basis(t, r, k).size(), trimmed_dim(3, r, k));
}

TEST(Trimmed, BlocksAreOrthonormalAndStructured)
{
  Domain t = cube_corner();
  for (int k = 0; k <= 3; ++k) {
    TrimmedBasis B = build_trimmed_basis(t, 2, k);
    std::vector<PolyForm> ex(B.elements.begin(), B.elements.begin() + B.n_exact);
    std::vector<PolyForm> ko(B.elements.begin() + B.n_exact, B.elements.end());
    if (!ex.empty()) {
      EXPECT_LT((gram_matrix(t, ex) - Eigen::MatrixXd::Identity(ex.size(), ex.size())).norm(), 1e-10);
      if (k > 0 && k < 3)
        for (const auto& e : ex) EXPECT_LT(exterior_derivative(e).max_abs(), 1e-9);
    }
    if (!ko.empty()) {
      EXPECT_LT((gram_matrix(t, ko) - Eigen::MatrixXd::Identity(ko.size(), ko.size())).norm(), 1e-10);
      if (k > 0)
        for (const auto& e : ko) EXPECT_LT(koszul(e).max_abs(), 1e-9);
    }
  }
}

TEST(Trimmed, ProjectionReproducesTrimmedForms)
{
  std::mt19937_64 rng(3);
  Domain s = square_domain();
  for (int k = 0; k <= 2; ++k) {
    TrimmedBasis B = build_trimmed_basis(s, 2, k);
    if (B.size() == 0) continue;
    Eigen::VectorXd c = test::random_vector(B.size(), rng);
    PolyForm w = B.expand(c);
    EXPECT_LT((trimmed_project(s, B, w) - c).norm(), 1e-10 * c.norm());
  }
}

TEST(Trimmed, ProjectionResidualIsOrthogonal)
{
  std::mt19937_64 rng(4);
  Domain t = cube_corner();
  TrimmedBasis B = build_trimmed_basis(t, 1, 1);
  PolyForm w = random_form(3, 1, 3, rng);
  PolyForm p = B.expand(trimmed_project(t, B, w));
  PolyForm res = w - p.with_degree(w.poly_degree());
  for (const auto& b : B.elements) EXPECT_NEAR(inner_product(t, res, b), 0.0, 1e-11);
}

TEST(Trimmed, DecompositionConstantIsFinite)
{
  Domain s = square_domain();
  LocalConstants lc = measure_local_constants(s, {}, 2, 1);
  EXPECT_GT(lc.decomposition, 1.0);
  EXPECT_LT(lc.decomposition, 1e3);
  EXPECT_GT(lc.d_norm, 0.0);
  EXPECT_GT(lc.koszul_inverse, 0.0);
}
