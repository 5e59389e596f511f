// Constructive preimages of discrete exterior derivatives and Poincare
// constants of the DDR complex.

#ifndef FORMDECK_POINCARE_HPP
#define FORMDECK_POINCARE_HPP

#include <formdeck/ddr.hpp>
#include <formdeck/lift.hpp>

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace formdeck {

/// The linear map sigma -> tau (X^{k+1} -> X^k) with d tau = sigma on the
/// range of d: the cochain lifting on the k-cells, local solves above
class DDRLifting {
public:
  DDRLifting(const DDRComplex& X, const CochainLift& L, int k);

  int k() const { return m_k; }
  const Eigen::MatrixXd& matrix() const { return m_T; }
  /// (int_f sigma_f) over the (k+1)-cells, as a matrix on X^{k+1}
  const Eigen::MatrixXd& integrals() const { return m_integrals; }

  struct Result {
    Eigen::VectorXd tau;
    double residual = 0.0;       // relative |d tau - d omega|
    double ratio = 0.0;          // |||tau||| / |||d omega|||
    double optimal = 0.0;        // min over ker d of |||omega + phi|||, divided by |||d omega|||
    double koszul_defect = 0.0;  // largest Koszul-block coefficient of tau above the k-cells
  };
  /// with_quotient also computes the optimal quotient norm (one SVD of d)
  Result construct(const Eigen::VectorXd& omega, NormKind kind = NormKind::Explicit, bool with_quotient = false) const;

  /// sup over omega of |||tau(d omega)||| / |||d omega|||
  double constant(NormKind kind = NormKind::Explicit) const;

private:
  const DDRComplex& m_X;
  const CochainLift& m_L;
  int m_k;
  Eigen::MatrixXd m_T, m_integrals;
};

struct SpectralResult {
  double constant = 0.0;  // 1 / smallest non-zero generalised singular value of d
  double gap = 0.0;       // smallest non-zero singular value
  double kernel_sigma = 0.0; // largest computed singular value counted as zero (0 if none)
  int kernel_dim = 0;
  int harmonic_dim = 0;   // dim ker d_k - rank d_{k-1}
};

/// Spectral Poincare constant of d_k: X^k -> X^{k+1} in the given discrete norms
SpectralResult spectral_constant(const DDRComplex& X, int k, NormKind kind = NormKind::Explicit);

/// Minimal norm of omega + ker d_k, the M-orthogonal projection onto the complement of the kernel
double quotient_norm(const DDRComplex& X, int k, const Eigen::VectorXd& omega, NormKind kind = NormKind::Explicit);

struct SweepRow {
  std::string family;
  int level = 0, k = 0, r = 0;
  double h = 0, rho = 0;
  int n_cells = 0, dofs = 0;
  double spectral = 0, lifting = 0, cochain = 0;
  double gap = 0, kernel_sigma = 0;
  int harmonic = 0;
  double max_residual = 0;
  double seconds = 0;
};

/// One row per level: spectral constant, lifting constant, cochain constant and
/// the largest residual over the seeded samples
std::vector<SweepRow> poincare_sweep(const std::string& family, int first_level, int levels, int k, int r,
                                     std::uint64_t seed, int samples = 20);

} // namespace formdeck

#endif
