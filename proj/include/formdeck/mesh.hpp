// Polytopal meshes with a conforming simplicial submesh.
//
// The JSON layout is
//   { "ambient_dim": n, "vertices": [[x...]...],
//     "simplices": { "k": [[v0..vk]...] },
//     "cells": { "k": [ {"id", "simplices", "boundary": [{"cell","sign"}], "star_point"?} ] } }
// Simplices are oriented by their stored vertex order; a k-cell is oriented
// like its member k-simplices, which all carry sign +1.

#ifndef FORMDECK_MESH_HPP
#define FORMDECK_MESH_HPP

#include <formdeck/geometry.hpp>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace formdeck {

enum class MeshErrorKind { Parse, NonConforming, BadOrientation, NonBall, ZeroMeasure };

const char* to_string(MeshErrorKind k);

struct MeshError : std::runtime_error {
  MeshErrorKind kind;
  MeshError(MeshErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

using IntSparse = Eigen::SparseMatrix<int>;

struct CellFace {
  int cell;
  int sign;
};

struct Cell {
  int dim = 0;
  std::vector<int> simplices;
  std::vector<CellFace> boundary;
  std::optional<Eigen::VectorXd> star_point;
};

struct CellRef {
  int dim;
  int id;
  bool operator==(const CellRef&) const = default;
};

struct RegularityReport {
  double rho = 0;            // min over the two ratios below
  double simplex_ratio = 0;  // min r_F / h_F over simplices
  double cell_ratio = 0;     // min h_F / h_f over member simplices
};

class Mesh {
public:
  Mesh() = default;
  /// Builds derived data and runs every check; throws MeshError
  Mesh(Eigen::MatrixXd vertices, std::vector<std::vector<std::vector<int>>> simplices,
       std::vector<std::vector<Cell>> cells);

  static Mesh from_json(const std::string& text);
  static Mesh load(const std::string& path);
  std::string to_json() const;
  void save(const std::string& path) const;

  int dim() const { return m_n; }
  int num_vertices() const { return static_cast<int>(m_vertices.cols()); }
  const Eigen::MatrixXd& vertices() const { return m_vertices; }

  int num_simplices(int k) const { return static_cast<int>(m_simplices[k].size()); }
  const std::vector<int>& simplex(int k, int id) const { return m_simplices[k][id]; }
  Eigen::MatrixXd simplex_points(int k, int id) const;
  /// Id of the k-simplex with the given vertex set (any order), -1 if absent
  int find_simplex(std::vector<int> verts) const;
  double simplex_measure(int k, int id) const { return m_simplex_measure[k][id]; }
  double simplex_diameter(int k, int id) const { return m_simplex_h[k][id]; }

  int num_cells(int k) const { return static_cast<int>(m_cells[k].size()); }
  const Cell& cell(int k, int id) const { return m_cells[k][id]; }
  const Domain& cell_domain(int k, int id) const { return *m_domains[k][id]; }
  double cell_h(int k, int id) const { return m_domains[k][id]->h(); }
  double cell_measure(int k, int id) const { return m_domains[k][id]->measure(); }

  /// M_h(f): cells of dimension j in the closure of f (ascending ids)
  const std::vector<int>& closure_cells(int k, int id, int j) const { return m_closure[k][id][j]; }
  /// S_h(f): j-simplices contained in f
  const std::vector<int>& cell_simplices(int k, int id, int j) const { return m_cell_simp[k][id][j]; }
  /// S_h(boundary f): j-simplices on the boundary of f
  const std::vector<int>& cell_boundary_simplices(int k, int id, int j) const { return m_cell_bsimp[k][id][j]; }
  /// n-cells whose closure contains the given j-cell
  const std::vector<int>& top_cells_containing(int j, int id) const { return m_top_star[j][id]; }

  /// Lowest-dimensional cell containing a simplex
  CellRef selection(int k, int simplex_id) const { return m_selection[k][simplex_id]; }
  /// P_k(d): k-simplices whose selected cell has dimension d
  std::vector<int> partition(int k, int d) const;

  /// Signed simplicial boundary (rows (k-1)-simplices, cols k-simplices)
  const IntSparse& simplicial_boundary(int k) const { return m_sbd[k]; }
  /// Signed cellular boundary (rows (k-1)-cells, cols k-cells)
  const IntSparse& cellular_boundary(int k) const { return m_cbd[k]; }

  RegularityReport regularity_report() const;
  /// Copy with every vertex mapped x -> s x
  Mesh scaled(double s) const;

private:
  int m_n = 0;
  Eigen::MatrixXd m_vertices;
  std::vector<std::vector<std::vector<int>>> m_simplices;
  std::vector<std::vector<Cell>> m_cells;

  std::vector<std::map<std::vector<int>, int>> m_lookup;
  std::vector<std::vector<double>> m_simplex_measure, m_simplex_h;
  std::vector<std::vector<std::shared_ptr<Domain>>> m_domains;
  std::vector<std::vector<std::vector<std::vector<int>>>> m_closure, m_cell_simp, m_cell_bsimp;
  std::vector<std::vector<std::vector<int>>> m_top_star;
  std::vector<std::vector<CellRef>> m_selection;
  std::vector<IntSparse> m_sbd, m_cbd;

  void build();
};

/// Reduced Betti numbers of a simplicial subcomplex given by simplex ids per
/// dimension (must be closed under faces)
std::vector<int> reduced_betti(const Mesh& m, const std::vector<std::vector<int>>& sub);

} // namespace formdeck

#endif
