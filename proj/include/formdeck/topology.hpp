// Chains, boundaries and cycle spaces on the cellular complex M_h and the
// simplicial complex S_h, and the spanning sets of local cycles used by the
// cochain lifting.

#ifndef FORMDECK_TOPOLOGY_HPP
#define FORMDECK_TOPOLOGY_HPP

#include <formdeck/mesh.hpp>

#include <Eigen/Dense>
#include <vector>

namespace formdeck {

enum class ComplexKind { Cellular, Simplicial };

/// Number of k-entities in the complex
int complex_size(const Mesh& m, ComplexKind kind, int k);
/// Boundary matrix, rows (k-1)-entities, cols k-entities (empty for k = 0)
const IntSparse& boundary_matrix(const Mesh& m, ComplexKind kind, int k);
/// Coboundary matrix, rows (k+1)-entities, cols k-entities
IntSparse coboundary_matrix(const Mesh& m, ComplexKind kind, int k);

/// Chains and cochains are coefficient vectors over the k-entities
Eigen::VectorXd boundary(const Mesh& m, ComplexKind kind, int k, const Eigen::VectorXd& chain);
Eigen::VectorXd coboundary(const Mesh& m, ComplexKind kind, int k, const Eigen::VectorXd& cochain);

/// Orthonormal basis of ker(boundary_k)
Eigen::MatrixXd cycle_space(const Mesh& m, ComplexKind kind, int k);
std::vector<int> betti_numbers(const Mesh& m, ComplexKind kind);

/// Local boundary matrix of S_h(f) from (k)-simplices `cols` to (k-1)-simplices `rows`
Eigen::MatrixXd local_boundary(const Mesh& m, int k, const std::vector<int>& rows, const std::vector<int>& cols);

struct SpanningSet {
  int cell_dim = 0, cell = 0, k = 0;
  std::vector<int> simplices;          // F_k, ascending
  std::vector<Eigen::VectorXd> cycles; // z_i over all k-simplices, <F_i, z_j> = delta_ij
  std::vector<int> rejected;           // V_k
};

/// Greedy construction of k-cycles of S_h(f) dual to the selected interior simplices
SpanningSet construct_spanning_set(const Mesh& m, int cell_dim, int cell, int k);

/// dim Z_k(S_h(f)) - dim Z_k(S_h(boundary f))
int spanning_set_expected_size(const Mesh& m, int cell_dim, int cell, int k);

struct Preimage {
  Eigen::VectorXd chain; // (k+1)-chain over all (k+1)-simplices
  double ratio = 0.0;    // |w| / |z|
  double cap = 0.0;      // r^(r/2) with r the rank of the local boundary matrix
};

/// Least-norm w in C_{k+1}(S_h(f)) with boundary w = z; throws if z is not a
/// boundary there or if the norm ratio exceeds the Cramer cap
Preimage boundary_preimage(const Mesh& m, int cell_dim, int cell, int k, const Eigen::VectorXd& z);

} // namespace formdeck

#endif
