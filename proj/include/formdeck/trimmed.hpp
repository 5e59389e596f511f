// Trimmed polynomial spaces P^-_r Lambda^k on a cell, orthonormalised
// polynomial bases, L2 projections and local operator constants.

#ifndef FORMDECK_TRIMMED_HPP
#define FORMDECK_TRIMMED_HPP

#include <formdeck/polyform.hpp>

#include <Eigen/Dense>
#include <vector>

namespace formdeck {

/// Rank tolerance used when extracting bases from spanning sets
constexpr double basis_rank_tol = 1e-10;

/// L2-orthonormal basis of span(forms); all forms must share (d, k)
std::vector<PolyForm> orthonormalize(const Domain& dom, const std::vector<PolyForm>& forms,
                                     double rel_tol = basis_rank_tol);

/// L2-orthonormal basis of the full space P_r Lambda^k on the domain
std::vector<PolyForm> full_basis(const Domain& dom, int r, int k);
/// Orthonormal basis of d P_r Lambda^{k-1}, as k-forms
std::vector<PolyForm> exact_basis(const Domain& dom, int r, int k);
/// Orthonormal basis of kappa P_r Lambda^{k+1}, as k-forms of degree r+1
std::vector<PolyForm> koszul_basis(const Domain& dom, int r, int k);

struct TrimmedBasis {
  int dim = 0, r = 0, k = 0;
  /// exact block d P_r Lambda^{k-1} first, then the Koszul block kappa P_{r-1} Lambda^{k+1};
  /// each block is orthonormal (for k = 0 the first block is all of P_r)
  std::vector<PolyForm> elements;
  int n_exact = 0;
  int n_koszul = 0;
  Eigen::MatrixXd gram;
  Eigen::LDLT<Eigen::MatrixXd> factor;
  double condition = 1.0;

  int size() const { return static_cast<int>(elements.size()); }
  /// Expansion sum c_i b_i
  PolyForm expand(const Eigen::VectorXd& c) const;
};

/// Dimension of P^-_r Lambda^k(R^d)
int trimmed_dim(int d, int r, int k);

TrimmedBasis build_trimmed_basis(const Domain& dom, int r, int k);

/// L2 projection onto the trimmed space; returns coefficients in the basis.
/// Throws when the Gram condition number exceeds cond_cap.
Eigen::VectorXd trimmed_project(const Domain& dom, const TrimmedBasis& basis, const PolyForm& w,
                                double cond_cap = 1e12);
/// Right-hand sides (<w_j, b_i>)_ij for several forms at once
Eigen::MatrixXd basis_moments(const Domain& dom, const std::vector<PolyForm>& basis,
                              const std::vector<PolyForm>& forms);

struct LocalConstants {
  double d_norm = 0;         // |||d||| : P_r Lambda^j -> P_{r-1} Lambda^{j+1}
  double koszul_norm = 0;    // |||kappa||| : P_r Lambda^j -> P_{r+1} Lambda^{j-1}
  double d_inverse = 0;      // |||d^{-1}||| : d kappa P_r Lambda^j -> kappa P_r Lambda^j
  double koszul_inverse = 0; // |||kappa^{-1}||| : kappa d P_r Lambda^j -> d P_r Lambda^j
  double trace = 0;          // sup |tr w|_{boundary} / |w| over P_r Lambda^j
  double decomposition = 0;  // sup (|mu|+|nu|)/|mu+nu|, mu in d P_{r+1}, nu in kappa P_{r-1}
};

/// Operator constants on a cell of dimension d for form degree j (1 <= j <= d-1
/// keeps every entry defined; undefined entries are NaN)
LocalConstants measure_local_constants(const Domain& dom, const std::vector<const Domain*>& boundary,
                                       int r, int j);

/// Cosine of the largest principal angle between two orthonormal families
double max_principal_cosine(const Domain& dom, const std::vector<PolyForm>& u,
                            const std::vector<PolyForm>& v);

} // namespace formdeck

#endif
