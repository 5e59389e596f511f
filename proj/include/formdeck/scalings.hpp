// Scaling of local operator constants under dilation of a cell.

#ifndef FORMDECK_SCALINGS_HPP
#define FORMDECK_SCALINGS_HPP

#include <formdeck/mesh.hpp>
#include <formdeck/trimmed.hpp>

#include <string>
#include <vector>

namespace formdeck {

struct ScalingRow {
  std::string quantity;
  double expected = 0;  // exponent p in constant ~ s^p
  double measured = 0;  // least-squares slope of log constant against log s
  std::vector<double> values;
};

/// Constants of one cell measured on dilated copies of the mesh
std::vector<ScalingRow> appendix_scalings(const Mesh& m, int d, int cell, int r, int j,
                                          const std::vector<double>& scales);

/// Local constants of a mesh cell
LocalConstants cell_constants(const Mesh& m, int d, int cell, int r, int j);

} // namespace formdeck

#endif
