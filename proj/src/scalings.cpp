#include <formdeck/scalings.hpp>

#include <cmath>

namespace formdeck {

LocalConstants cell_constants(const Mesh& m, int d, int cell, int r, int j)
{
  std::vector<const Domain*> bnd;
  for (const auto& b : m.cell(d, cell).boundary) bnd.push_back(&m.cell_domain(d - 1, b.cell));
  return measure_local_constants(m.cell_domain(d, cell), bnd, r, j);
}

std::vector<ScalingRow> appendix_scalings(const Mesh& m, int d, int cell, int r, int j,
                                          const std::vector<double>& scales)
{
  std::vector<ScalingRow> rows{{"d", -1.0, 0, {}},       {"koszul", 1.0, 0, {}}, {"d_inverse", 1.0, 0, {}},
                               {"koszul_inverse", -1.0, 0, {}}, {"trace", -0.5, 0, {}}, {"decomposition", 0.0, 0, {}}};
  for (double s : scales) {
    Mesh ms = m.scaled(s);
    LocalConstants c = cell_constants(ms, d, cell, r, j);
    double v[6] = {c.d_norm, c.koszul_norm, c.d_inverse, c.koszul_inverse, c.trace, c.decomposition};
    for (int q = 0; q < 6; ++q) rows[q].values.push_back(v[q]);
  }
  const int ns = static_cast<int>(scales.size());
  double mx = 0.0;
  for (double s : scales) mx += std::log(s) / ns;
  for (auto& row : rows) {
    double my = 0.0;
    for (double v : row.values) my += std::log(v) / ns;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < ns; ++i) {
      double dx = std::log(scales[i]) - mx;
      num += dx * (std::log(row.values[i]) - my);
      den += dx * dx;
    }
    row.measured = den > 0 ? num / den : std::nan("");
  }
  return rows;
}

} // namespace formdeck
