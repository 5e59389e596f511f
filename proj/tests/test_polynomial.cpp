#include <formdeck/geometry.hpp>
#include <formdeck/polynomial.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace formdeck;

namespace {
double factorial(int n) { return std::tgamma(n + 1.0); }
}

TEST(Polynomial, MonomialCount)
{
  EXPECT_EQ(monomial_count(2, 2), 6);
  EXPECT_EQ(monomial_count(3, 1), 4);
  EXPECT_EQ(monomial_count(3, 3), 20);
  EXPECT_EQ(MonomialTable::get(3, 3)->size(), 20);
}

TEST(Polynomial, SmallerTableIsPrefix)
{
  auto a = MonomialTable::get(3, 2), b = MonomialTable::get(3, 4);
  for (int i = 0; i < a->size(); ++i) EXPECT_EQ(a->exponents(i), b->exponents(i));
}

TEST(Polynomial, ReferenceSimplexIntegralsMatchDirichletFormula)
{
  // int x^a y^b z^c over the unit simplex = a! b! c! / (a+b+c+3)!
  auto t = MonomialTable::get(3, 5);
  for (int i = 0; i < t->size(); ++i) {
    Polynomial p(3, 5);
    p[i] = 1.0;
    const auto& e = t->exponents(i);
    double expect = factorial(e[0]) * factorial(e[1]) * factorial(e[2]) / factorial(e[0] + e[1] + e[2] + 3);
    EXPECT_NEAR(p.integrate_reference_simplex(), expect, 1e-15);
  }
}

TEST(Polynomial, ProductDerivativeAndComposition)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  Polynomial p(2, 2), q(2, 3);
  for (auto& c : p.coeffs()) c = u(rng);
  for (auto& c : q.coeffs()) c = u(rng);
  Eigen::MatrixXd A = Eigen::MatrixXd::Random(2, 3);
  Eigen::VectorXd b = Eigen::VectorXd::Random(2);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd y = Eigen::VectorXd::Random(2), z = Eigen::VectorXd::Random(3);
    EXPECT_NEAR((p * q).evaluate(y), p.evaluate(y) * q.evaluate(y), 1e-13);
    double eps = 1e-6;
    Eigen::VectorXd e0 = Eigen::VectorXd::Unit(2, 0) * eps;
    double fd = (p.evaluate(y + e0) - p.evaluate(y - e0)) / (2 * eps);
    EXPECT_NEAR(p.derivative(0).evaluate(y), fd, 1e-8);
    EXPECT_NEAR(q.compose_affine(A, b).evaluate(z), q.evaluate(A * z + b), 1e-12);
  }
  EXPECT_EQ(p.derivative(1).derivative(1).derivative(0).effective_degree(), -1);
}

TEST(Geometry, ReferenceTriangleInradius)
{
  Eigen::MatrixXd T(2, 3);
  T << 0, 1, 0,
       0, 0, 1;
  EXPECT_NEAR(simplex_inradius(T), 1.0 - std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(simplex_measure(T), 0.5, 1e-15);
  EXPECT_NEAR(diameter(T), std::sqrt(2.0), 1e-15);
}

TEST(Geometry, SimplexFrameIsOrthonormalAndOriented)
{
  Eigen::MatrixXd T(3, 3);
  T << 0, 2, 0,
       0, 0, 1,
       1, 1, 3;
  Frame f = simplex_frame(T, T.col(0), 2.0);
  EXPECT_LT((f.axes.transpose() * f.axes - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-12);
  EXPECT_GT(orientation_in_frame(f, T), 0.0);
  Eigen::VectorXd x = T.col(1);
  EXPECT_LT((f.to_ambient(f.to_local(x)) - x).norm(), 1e-14);
}

TEST(Geometry, DomainMomentsAgreeWithMeasure)
{
  Eigen::MatrixXd T(2, 3);
  T << 0, 3, 0,
       0, 0, 2;
  Frame f = simplex_frame(T, Eigen::Vector2d(1, 0.5), 1.5);
  Domain dom(f, {T});
  EXPECT_NEAR(dom.measure(), 3.0, 1e-14);
  EXPECT_NEAR(dom.integrate(Polynomial::constant(2, 1.0)), 3.0, 1e-14);
  // linear integrands see only the centroid
  Eigen::VectorXd c = f.to_local(Eigen::Vector2d(1.0, 2.0 / 3.0));
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(dom.integrate(Polynomial::coordinate(2, j)), 3.0 * c(j), 1e-14);
}
