// Mesh families: cartesian grids cut into simplices, agglomerated polygons
// and small fixtures.  Lower-dimensional cells are recovered from the top
// cells by grouping coplanar boundary simplices with the same neighbours.

#ifndef FORMDECK_MESH_GEN_HPP
#define FORMDECK_MESH_GEN_HPP

#include <formdeck/mesh.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace formdeck {

/// Polytopal mesh from top simplices and their cell assignment
Mesh build_polytopal_mesh(const Eigen::MatrixXd& vertices, const std::vector<std::vector<int>>& tops,
                          const std::vector<int>& cell_of_top);

/// Unit square (n = 2) or cube (n = 3) with N cells per side; cells for which
/// keep(i, j[, k]) is false are dropped
Mesh cartesian_mesh(int n, int N, const std::vector<bool>& keep = {});

Mesh square_mesh(int level);     // N = 2^(level-1)
Mesh lshape_mesh(int level);     // N = 2^level, upper right quarter removed
Mesh annulus_mesh(int level);    // N = 2^(level+1), centre [1/4,3/4]^2 removed
Mesh cube_mesh(int level);       // N = 2^(level-1)
Mesh agglomerated_mesh(int level, std::uint64_t seed);
/// Square pyramid whose base carries a centre vertex (four tetrahedra)
Mesh pyramid_mesh();

/// One-cell meshes: triangle, square, pentagon, tetrahedron, cube, pyramid
Mesh single_cell_mesh(const std::string& shape);
const std::vector<std::string>& shape_names();

const std::vector<std::string>& family_names();
Mesh generate(const std::string& family, int level, std::uint64_t seed);

/// Seed from FORMDECK_SEED, default 42
std::uint64_t default_seed();

} // namespace formdeck

#endif
