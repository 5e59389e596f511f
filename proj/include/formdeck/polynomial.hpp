// Dense multivariate polynomials over graded monomial tables.

#ifndef FORMDECK_POLYNOMIAL_HPP
#define FORMDECK_POLYNOMIAL_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace formdeck {

/// Monomials y^alpha with |alpha| <= degree in nvars variables, graded then
/// reverse-lexicographic within each degree
class MonomialTable {
public:
  static std::shared_ptr<const MonomialTable> get(int nvars, int degree);

  int nvars() const { return m_nvars; }
  int degree() const { return m_degree; }
  int size() const { return static_cast<int>(m_exps.size()); }
  const std::vector<int>& exponents(int i) const { return m_exps[i]; }
  int total_degree(int i) const { return m_total[i]; }
  /// Index of an exponent vector, -1 if its degree exceeds the table
  int index_of(const std::vector<int>& e) const;

  MonomialTable(int nvars, int degree);

private:
  int m_nvars, m_degree;
  std::vector<std::vector<int>> m_exps;
  std::vector<int> m_total;
  std::vector<int> m_lookup;
  long encode(const std::vector<int>& e) const;
};

/// Number of monomials of degree <= r in d variables
int monomial_count(int d, int r);

class Polynomial {
public:
  Polynomial() = default;
  Polynomial(int nvars, int degree);
  static Polynomial constant(int nvars, double c);
  /// Coordinate function y_j
  static Polynomial coordinate(int nvars, int j);

  int nvars() const { return m_nvars; }
  int degree() const { return m_degree; }
  const MonomialTable& table() const { return *m_table; }
  std::vector<double>& coeffs() { return m_c; }
  const std::vector<double>& coeffs() const { return m_c; }
  double& operator[](int i) { return m_c[i]; }
  double operator[](int i) const { return m_c[i]; }

  /// Same polynomial stored in a table of larger (or smaller, if exact) degree
  Polynomial with_degree(int degree) const;
  /// Largest degree carrying a non-zero coefficient (-1 for zero)
  int effective_degree(double tol = 0.0) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(int j) const;
  double evaluate(const Eigen::VectorXd& y) const;
  /// p(A z + b) as a polynomial in z (A is nvars x m)
  Polynomial compose_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) const;
  /// Integral over the reference simplex conv{0, e_1, ..., e_m}
  double integrate_reference_simplex() const;

private:
  int m_nvars = 0, m_degree = 0;
  std::shared_ptr<const MonomialTable> m_table;
  std::vector<double> m_c;
};

} // namespace formdeck

#endif
