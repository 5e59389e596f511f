#include "support.hpp"

#include <formdeck/topology.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace formdeck;

TEST(Topology, BettiNumbersOfFamilies)
{
  std::map<std::string, std::vector<int>> expect{
      {"square", {1, 0, 0}}, {"lshape", {1, 0, 0}}, {"annulus", {1, 1, 0}},
      {"agglomerated", {1, 0, 0}}, {"cube", {1, 0, 0, 0}}, {"pyramid", {1, 0, 0, 0}}};
  for (const auto& [fam, b] : expect) {
    Mesh m = generate(fam, 1, 42);
    EXPECT_EQ(betti_numbers(m, ComplexKind::Cellular), b) << fam;
    EXPECT_EQ(betti_numbers(m, ComplexKind::Simplicial), b) << fam;
  }
}

TEST(Topology, CoboundaryIsTransposedBoundary)
{
  Mesh m = lshape_mesh(1);
  for (int k = 0; k < 2; ++k) {
    Eigen::MatrixXi a = coboundary_matrix(m, ComplexKind::Cellular, k);
    Eigen::MatrixXi b = Eigen::MatrixXi(boundary_matrix(m, ComplexKind::Cellular, k + 1)).transpose();
    EXPECT_EQ((a - b).cwiseAbs().sum(), 0);
  }
}

TEST(Topology, SquareFixtureSpanningSet)
{
  Mesh m = test::square_fixture();
  SpanningSet s = construct_spanning_set(m, 2, 0, 1);
  ASSERT_EQ(s.simplices.size(), 1u);
  int diag = m.find_simplex({0, 2});
  EXPECT_EQ(s.simplices[0], diag);
  const Eigen::VectorXd& z = s.cycles[0];
  EXPECT_NEAR(z(diag), 1.0, 1e-12);
  for (int e = 0; e < z.size(); ++e)
    if (e != diag) EXPECT_NEAR(std::abs(z(e)), 0.5, 1e-12);
  EXPECT_LT(boundary(m, ComplexKind::Simplicial, 1, z).norm(), 1e-12);
}

TEST(Topology, SpanningSetsAreDualAndComplete)
{
  for (const char* fam : {"pyramid", "agglomerated", "annulus"}) {
    Mesh m = generate(fam, 1, 42);
    for (int d = 1; d <= m.dim(); ++d)
      for (int c = 0; c < m.num_cells(d); ++c)
        for (int k = 0; k < d; ++k) {
          SpanningSet s = construct_spanning_set(m, d, c, k);
          EXPECT_EQ(static_cast<int>(s.simplices.size()), spanning_set_expected_size(m, d, c, k));
          for (size_t i = 0; i < s.simplices.size(); ++i)
            for (size_t j = 0; j < s.cycles.size(); ++j)
              EXPECT_NEAR(s.cycles[j](s.simplices[i]), i == j ? 1.0 : 0.0, 1e-10);
        }
  }
}

TEST(Topology, PyramidSpanningSetSizes)
{
  // S(f): 6 vertices, 13 edges, 12 triangles, 4 tetrahedra; S(bd f) drops the
  // apex-centre edge, the four fins and the tetrahedra
  Mesh m = pyramid_mesh();
  EXPECT_EQ(spanning_set_expected_size(m, 3, 0, 2), 4 - 1);
  EXPECT_EQ(spanning_set_expected_size(m, 3, 0, 1), (13 - 6 + 1) - (12 - 6 + 1));
  SpanningSet s = construct_spanning_set(m, 3, 0, 2);
  EXPECT_EQ(s.simplices.size(), 3u);
  for (int t : s.simplices) EXPECT_EQ(m.selection(2, t), (CellRef{3, 0}));
}

TEST(Topology, BoundaryPreimageRespectsCap)
{
  Mesh m = pyramid_mesh();
  SpanningSet s = construct_spanning_set(m, 3, 0, 1);
  for (const auto& z : s.cycles) {
    Preimage p = boundary_preimage(m, 3, 0, 1, z);
    EXPECT_LT((boundary(m, ComplexKind::Simplicial, 2, p.chain) - z).norm(), 1e-10);
    EXPECT_LE(p.ratio, p.cap);
  }
}
