// Cochain maps between the cellular complex M_h and its simplicial submesh
// S_h: the lifting I^k (cellular -> simplicial) and the collapse J^k
// (simplicial -> cellular), and the cochain Poincare inverse built from them.

#ifndef FORMDECK_LIFT_HPP
#define FORMDECK_LIFT_HPP

#include <formdeck/mesh.hpp>
#include <formdeck/topology.hpp>
#include <formdeck/whitney.hpp>

#include <Eigen/Dense>
#include <vector>

namespace formdeck {

class CochainLift {
public:
  /// Builds I^k for every k (k from n down, cell dimension upwards)
  CochainLift(const Mesh& m, const WhitneyComplex& w);

  const Mesh& mesh() const { return m_mesh; }
  const WhitneyComplex& whitney() const { return m_whitney; }

  /// I^k as a matrix (k-simplices x k-cells)
  const Eigen::MatrixXd& lift_matrix(int k) const { return m_I[k]; }
  /// J^k as a matrix (k-cells x k-simplices)
  const Eigen::MatrixXd& collapse_matrix(int k) const { return m_J[k]; }
  Eigen::VectorXd lift(int k, const Eigen::VectorXd& cochain) const { return m_I[k] * cochain; }
  Eigen::VectorXd collapse(int k, const Eigen::VectorXd& cochain) const { return m_J[k] * cochain; }

  /// Spanning sets used for the d-cells, indexed [k][d][cell]
  const SpanningSet& spanning_set(int k, int d, int cell) const { return m_span[k][d][cell]; }
  /// Anchor vertex used for k = 0 on a cell of dimension >= 1
  int anchor(int d, int cell) const;

  /// max |delta_S I^k - I^{k+1} delta_M| (entrywise)
  double cochain_map_defect(int k) const;
  /// max |delta_M J^k - J^{k+1} delta_S|
  double collapse_map_defect(int k) const;

  struct PoincareResult {
    Eigen::VectorXd lambda;
    double residual = 0.0;      // relative |delta lambda - xi|
    double weighted_ratio = 0.0; // weighted |lambda| / weighted |xi|
  };
  /// lambda with delta lambda = xi, through the Whitney minimal-norm preimage
  PoincareResult cochain_poincare(int k, const Eigen::VectorXd& xi) const;
  /// The linear map xi -> lambda (k-cells x (k+1)-cells)
  Eigen::MatrixXd poincare_operator(int k) const;
  /// Diagonal weights sum_{T containing f} h_T^{e} over j-cells
  Eigen::VectorXd cell_weights(int j, double exponent) const;
  /// Worst weighted ratio over all coboundaries xi
  double poincare_constant(int k) const;

private:
  const Mesh& m_mesh;
  const WhitneyComplex& m_whitney;
  std::vector<Eigen::MatrixXd> m_I, m_J;
  std::vector<std::vector<std::vector<SpanningSet>>> m_span;
};

} // namespace formdeck

#endif
