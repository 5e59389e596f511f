#include <formdeck/mesh.hpp>
#include <formdeck/exterior.hpp>
#include <formdeck/linalg.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace formdeck {

using json = nlohmann::json;

const char* to_string(MeshErrorKind k)
{
  switch (k) {
  case MeshErrorKind::Parse: return "parse";
  case MeshErrorKind::NonConforming: return "non-conforming";
  case MeshErrorKind::BadOrientation: return "bad-orientation";
  case MeshErrorKind::NonBall: return "non-ball";
  case MeshErrorKind::ZeroMeasure: return "zero-measure";
  }
  return "unknown";
}

namespace {
[[noreturn]] void fail(MeshErrorKind k, const std::string& msg) { throw MeshError(k, msg); }

std::string cell_name(int k, int id) { return std::to_string(k) + "-cell " + std::to_string(id); }

// all non-empty sub-tuples of v with j+1 entries, preserving order
void subsets(const std::vector<int>& v, int size, size_t start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out)
{
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < v.size(); ++i) {
    cur.push_back(v[i]);
    subsets(v, size, i + 1, cur, out);
    cur.pop_back();
  }
}

IntSparse from_triplets(int rows, int cols, const std::vector<Eigen::Triplet<int>>& t)
{
  IntSparse m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0);
  return m;
}
} // namespace

Mesh::Mesh(Eigen::MatrixXd vertices, std::vector<std::vector<std::vector<int>>> simplices,
           std::vector<std::vector<Cell>> cells)
    : m_n(static_cast<int>(vertices.rows())), m_vertices(std::move(vertices)),
      m_simplices(std::move(simplices)), m_cells(std::move(cells))
{
  build();
}

Eigen::MatrixXd Mesh::simplex_points(int k, int id) const
{
  const auto& s = m_simplices[k][id];
  Eigen::MatrixXd p(m_n, s.size());
  for (size_t i = 0; i < s.size(); ++i) p.col(i) = m_vertices.col(s[i]);
  return p;
}

int Mesh::find_simplex(std::vector<int> verts) const
{
  int k = static_cast<int>(verts.size()) - 1;
  if (k < 0 || k > m_n) return -1;
  std::sort(verts.begin(), verts.end());
  auto it = m_lookup[k].find(verts);
  return it == m_lookup[k].end() ? -1 : it->second;
}

std::vector<int> Mesh::partition(int k, int d) const
{
  std::vector<int> out;
  for (int i = 0; i < num_simplices(k); ++i)
    if (m_selection[k][i].dim == d) out.push_back(i);
  return out;
}

void Mesh::build()
{
  const int n = m_n;
  if (static_cast<int>(m_simplices.size()) != n + 1 || static_cast<int>(m_cells.size()) != n + 1)
    fail(MeshErrorKind::Parse, "simplices and cells must be given for every dimension 0..n");
  const int nv = num_vertices();

  // simplices: lookup, faces, boundary matrices
  m_lookup.assign(n + 1, {});
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i < num_simplices(k); ++i) {
      auto s = m_simplices[k][i];
      if (static_cast<int>(s.size()) != k + 1)
        fail(MeshErrorKind::Parse, std::to_string(k) + "-simplex " + std::to_string(i) + " has wrong arity");
      for (int v : s)
        if (v < 0 || v >= nv) fail(MeshErrorKind::Parse, "simplex references unknown vertex");
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        fail(MeshErrorKind::NonConforming, "simplex with repeated vertex");
      if (!m_lookup[k].emplace(s, i).second)
        fail(MeshErrorKind::NonConforming, "duplicate " + std::to_string(k) + "-simplex");
    }
  m_sbd.assign(n + 1, IntSparse());
  m_sbd[0] = IntSparse(0, num_simplices(0));
  for (int k = 1; k <= n; ++k) {
    std::vector<Eigen::Triplet<int>> t;
    for (int i = 0; i < num_simplices(k); ++i) {
      const auto& s = m_simplices[k][i];
      for (int j = 0; j <= k; ++j) {
        std::vector<int> face;
        for (int q = 0; q <= k; ++q)
          if (q != j) face.push_back(s[q]);
        int fid = find_simplex(face);
        if (fid < 0) fail(MeshErrorKind::NonConforming, "missing face of " + std::to_string(k) + "-simplex " + std::to_string(i));
        const auto& stored = m_simplices[k - 1][fid];
        std::vector<int> pos;
        for (int v : face) pos.push_back(static_cast<int>(std::find(stored.begin(), stored.end(), v) - stored.begin()));
        int sign = ((j % 2) ? -1 : 1) * permutation_sign(pos);
        t.emplace_back(fid, i, sign);
      }
    }
    m_sbd[k] = from_triplets(num_simplices(k - 1), num_simplices(k), t);
  }

  m_simplex_measure.assign(n + 1, {});
  m_simplex_h.assign(n + 1, {});
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i < num_simplices(k); ++i) {
      auto p = simplex_points(k, i);
      double h = formdeck::diameter(p);
      double mu = formdeck::simplex_measure(p);
      if (k > 0 && mu <= 1e-13 * std::pow(h, k))
        fail(MeshErrorKind::ZeroMeasure, std::to_string(k) + "-simplex " + std::to_string(i) + " is degenerate");
      m_simplex_measure[k].push_back(mu);
      m_simplex_h[k].push_back(h);
    }

  // cell membership
  std::vector<std::vector<int>> owner(n + 1);
  for (int k = 0; k <= n; ++k) {
    owner[k].assign(num_simplices(k), -1);
    for (int c = 0; c < num_cells(k); ++c) {
      auto& cell = m_cells[k][c];
      cell.dim = k;
      if (cell.simplices.empty()) fail(MeshErrorKind::ZeroMeasure, cell_name(k, c) + " has no simplices");
      if (k == 0 && cell.simplices.size() != 1) fail(MeshErrorKind::NonConforming, "0-cell with several vertices");
      for (int s : cell.simplices) {
        if (s < 0 || s >= num_simplices(k)) fail(MeshErrorKind::Parse, cell_name(k, c) + " references unknown simplex");
        if (owner[k][s] >= 0) fail(MeshErrorKind::NonConforming, std::to_string(k) + "-simplex " + std::to_string(s) + " assigned to two cells");
        owner[k][s] = c;
      }
      for (const auto& b : cell.boundary) {
        if (k == 0 || b.cell < 0 || b.cell >= num_cells(k - 1) || (b.sign != 1 && b.sign != -1))
          fail(MeshErrorKind::Parse, cell_name(k, c) + " has an invalid boundary entry");
      }
    }
  }
  for (int s = 0; s < num_simplices(n); ++s)
    if (owner[n][s] < 0) fail(MeshErrorKind::NonConforming, "top simplex " + std::to_string(s) + " belongs to no cell");

  // closures and simplices of cells
  m_closure.assign(n + 1, {});
  m_cell_simp.assign(n + 1, {});
  m_cell_bsimp.assign(n + 1, {});
  for (int k = 0; k <= n; ++k) {
    m_closure[k].resize(num_cells(k));
    m_cell_simp[k].resize(num_cells(k));
    m_cell_bsimp[k].resize(num_cells(k));
    for (int c = 0; c < num_cells(k); ++c) {
      const auto& cell = m_cells[k][c];
      std::vector<std::set<int>> cl(k + 1), sb(k + 1), sf(k + 1);
      cl[k].insert(c);
      for (const auto& b : cell.boundary) {
        for (int j = 0; j < k; ++j) {
          const auto& sub = m_closure[k - 1][b.cell][j];
          cl[j].insert(sub.begin(), sub.end());
          const auto& ss = m_cell_simp[k - 1][b.cell][j];
          sb[j].insert(ss.begin(), ss.end());
        }
      }
      for (int s : cell.simplices)
        for (int j = 0; j <= k; ++j) {
          std::vector<std::vector<int>> sub;
          std::vector<int> cur;
          subsets(m_simplices[k][s], j + 1, 0, cur, sub);
          for (auto& f : sub) sf[j].insert(find_simplex(f));
        }
      auto& C = m_closure[k][c];
      auto& S = m_cell_simp[k][c];
      auto& B = m_cell_bsimp[k][c];
      C.resize(k + 1);
      S.resize(k + 1);
      B.resize(k + 1);
      for (int j = 0; j <= k; ++j) {
        C[j].assign(cl[j].begin(), cl[j].end());
        S[j].assign(sf[j].begin(), sf[j].end());
        B[j].assign(sb[j].begin(), sb[j].end());
        for (int s : B[j])
          if (!sf[j].count(s)) fail(MeshErrorKind::NonConforming, "boundary of " + cell_name(k, c) + " is not contained in the cell");
      }
    }
  }

  // boundary chains against declared boundary cells
  for (int k = 1; k <= n; ++k) {
    Eigen::SparseMatrix<int> bd = m_sbd[k];
    for (int c = 0; c < num_cells(k); ++c) {
      const auto& cell = m_cells[k][c];
      std::map<int, int> chain;
      for (int s : cell.simplices)
        for (IntSparse::InnerIterator it(bd, s); it; ++it) chain[it.row()] += it.value();
      std::map<int, int> expected;
      for (const auto& b : cell.boundary)
        for (int s : m_cells[k - 1][b.cell].simplices) expected[s] += b.sign;
      for (const auto& [s, v] : chain) {
        int e = expected.count(s) ? expected.at(s) : 0;
        if (v == e) continue;
        if (std::abs(v) >= 2 || (std::abs(v) == 1 && std::abs(e) == 1))
          fail(MeshErrorKind::BadOrientation, cell_name(k, c) + " has inconsistently oriented simplices or boundary signs");
        fail(MeshErrorKind::NonConforming, "boundary of " + cell_name(k, c) + " does not match its boundary cells");
      }
      for (const auto& [s, e] : expected)
        if (e != 0 && !chain.count(s))
          fail(MeshErrorKind::NonConforming, "boundary of " + cell_name(k, c) + " does not match its boundary cells");
    }
  }

  // frames and integration domains
  m_domains.assign(n + 1, {});
  for (int k = 0; k <= n; ++k)
    for (int c = 0; c < num_cells(k); ++c) {
      const auto& cell = m_cells[k][c];
      std::vector<Eigen::MatrixXd> pts;
      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      double vol = 0.0;
      for (int s : cell.simplices) {
        pts.push_back(simplex_points(k, s));
        double mu = m_simplex_measure[k][s];
        centroid += mu * pts.back().rowwise().mean();
        vol += mu;
      }
      centroid /= vol;
      Eigen::MatrixXd cv(n, m_cell_simp[k][c][0].size());
      for (size_t i = 0; i < m_cell_simp[k][c][0].size(); ++i) cv.col(i) = m_vertices.col(m_simplices[0][m_cell_simp[k][c][0][i]][0]);
      double h = k == 0 ? 1.0 : formdeck::diameter(cv);
      Eigen::VectorXd origin = cell.star_point ? *cell.star_point : centroid;
      if (origin.size() != n) fail(MeshErrorKind::Parse, "star_point of " + cell_name(k, c) + " has wrong dimension");
      Frame fr = simplex_frame(pts[0], origin, h);
      for (const auto& p : pts) {
        for (int i = 0; i < p.cols(); ++i) {
          Eigen::VectorXd off = p.col(i) - origin;
          if ((off - fr.axes * (fr.axes.transpose() * off)).norm() > 1e-9 * std::max(h, 1e-300))
            fail(MeshErrorKind::NonConforming, cell_name(k, c) + " is not flat");
        }
        if (orientation_in_frame(fr, p) <= 0)
          fail(MeshErrorKind::BadOrientation, cell_name(k, c) + " has member simplices of opposite orientation");
      }
      m_domains[k].push_back(std::make_shared<Domain>(fr, pts));
    }

  // ball check
  for (int k = 1; k <= n; ++k)
    for (int c = 0; c < num_cells(k); ++c) {
      auto bc = reduced_betti(*this, m_cell_simp[k][c]);
      for (int b : bc)
        if (b != 0) fail(MeshErrorKind::NonBall, cell_name(k, c) + " is not homeomorphic to a ball");
      std::vector<std::vector<int>> bnd(m_cell_bsimp[k][c].begin(), m_cell_bsimp[k][c].begin() + k);
      auto bb = reduced_betti(*this, bnd);
      for (int j = 0; j < static_cast<int>(bb.size()); ++j)
        if (bb[j] != (j == k - 1 ? 1 : 0)) fail(MeshErrorKind::NonBall, "boundary of " + cell_name(k, c) + " is not a sphere");
    }

  // selection map
  m_selection.assign(n + 1, {});
  for (int k = 0; k <= n; ++k) m_selection[k].assign(num_simplices(k), CellRef{-1, -1});
  for (int d = 0; d <= n; ++d)
    for (int c = 0; c < num_cells(d); ++c)
      for (int k = 0; k <= d; ++k)
        for (int s : m_cell_simp[d][c][k]) {
          auto& sel = m_selection[k][s];
          if (sel.dim == -1) sel = CellRef{d, c};
          else if (sel.dim == d && sel.id != c)
            fail(MeshErrorKind::NonConforming, std::to_string(k) + "-simplex " + std::to_string(s) + " lies in two " + std::to_string(d) + "-cells");
        }
  for (int k = 0; k <= n; ++k)
    for (int s = 0; s < num_simplices(k); ++s) {
      const auto& sel = m_selection[k][s];
      if (sel.dim < 0) fail(MeshErrorKind::NonConforming, std::to_string(k) + "-simplex " + std::to_string(s) + " lies in no cell");
      const auto& B = m_cell_bsimp[sel.dim][sel.id];
      if (sel.dim > 0 && std::binary_search(B[k].begin(), B[k].end(), s))
        fail(MeshErrorKind::NonConforming, "selection map is not well defined");
    }

  // stars of top cells
  m_top_star.assign(n + 1, {});
  for (int j = 0; j <= n; ++j) m_top_star[j].resize(num_cells(j));
  for (int t = 0; t < num_cells(n); ++t)
    for (int j = 0; j <= n; ++j)
      for (int c : m_closure[n][t][j]) m_top_star[j][c].push_back(t);

  // cellular boundary
  m_cbd.assign(n + 1, IntSparse());
  m_cbd[0] = IntSparse(0, num_cells(0));
  for (int k = 1; k <= n; ++k) {
    std::vector<Eigen::Triplet<int>> t;
    for (int c = 0; c < num_cells(k); ++c)
      for (const auto& b : m_cells[k][c].boundary) t.emplace_back(b.cell, c, b.sign);
    m_cbd[k] = from_triplets(num_cells(k - 1), num_cells(k), t);
  }
}

std::vector<int> reduced_betti(const Mesh& m, const std::vector<std::vector<int>>& sub)
{
  const int top = static_cast<int>(sub.size()) - 1;
  std::vector<int> ranks(top + 2, 0); // ranks[j] = rank of boundary C_j -> C_{j-1} (augmented at j = 0)
  for (int j = 0; j <= top; ++j) {
    if (sub[j].empty()) continue;
    if (j == 0) {
      ranks[0] = 1;
      continue;
    }
    std::map<int, int> row;
    for (size_t i = 0; i < sub[j - 1].size(); ++i) row[sub[j - 1][i]] = static_cast<int>(i);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(sub[j - 1].size(), sub[j].size());
    const IntSparse& bd = m.simplicial_boundary(j);
    for (size_t c = 0; c < sub[j].size(); ++c)
      for (IntSparse::InnerIterator it(bd, sub[j][c]); it; ++it) {
        auto r = row.find(static_cast<int>(it.row()));
        if (r == row.end()) throw MeshError(MeshErrorKind::NonConforming, "subcomplex not closed under faces");
        B(r->second, c) = it.value();
      }
    ranks[j] = numerical_rank(B);
  }
  std::vector<int> betti(top + 1);
  for (int j = 0; j <= top; ++j) betti[j] = static_cast<int>(sub[j].size()) - ranks[j] - ranks[j + 1];
  return betti;
}

RegularityReport Mesh::regularity_report() const
{
  RegularityReport r;
  r.simplex_ratio = r.cell_ratio = 1.0;
  for (int k = 1; k <= m_n; ++k)
    for (int i = 0; i < num_simplices(k); ++i)
      r.simplex_ratio = std::min(r.simplex_ratio, simplex_inradius(simplex_points(k, i)) / m_simplex_h[k][i]);
  for (int k = 1; k <= m_n; ++k)
    for (int c = 0; c < num_cells(k); ++c)
      for (int s : m_cells[k][c].simplices) r.cell_ratio = std::min(r.cell_ratio, m_simplex_h[k][s] / cell_h(k, c));
  r.rho = std::min(r.simplex_ratio, r.cell_ratio);
  return r;
}

Mesh Mesh::scaled(double s) const
{
  auto cells = m_cells;
  for (auto& dim : cells)
    for (auto& c : dim)
      if (c.star_point) c.star_point = s * *c.star_point;
  return Mesh(s * m_vertices, m_simplices, cells);
}

Mesh Mesh::from_json(const std::string& text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw MeshError(MeshErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("ambient_dim").get<int>();
    if (n < 1 || n > 3) fail(MeshErrorKind::Parse, "ambient_dim must be 1, 2 or 3");
    const auto& jv = j.at("vertices");
    Eigen::MatrixXd V(n, jv.size());
    for (size_t i = 0; i < jv.size(); ++i) {
      if (jv[i].size() != static_cast<size_t>(n)) fail(MeshErrorKind::Parse, "vertex with wrong dimension");
      for (int a = 0; a < n; ++a) V(a, i) = jv[i][a].get<double>();
    }
    std::vector<std::vector<std::vector<int>>> simplices(n + 1);
    std::vector<std::vector<Cell>> cells(n + 1);
    for (int k = 0; k <= n; ++k) {
      const std::string key = std::to_string(k);
      if (j.at("simplices").contains(key))
        simplices[k] = j["simplices"][key].get<std::vector<std::vector<int>>>();
      if (!j.at("cells").contains(key)) continue;
      const auto& jc = j["cells"][key];
      cells[k].resize(jc.size());
      for (size_t c = 0; c < jc.size(); ++c) {
        const auto& e = jc[c];
        int id = e.at("id").get<int>();
        if (id < 0 || id >= static_cast<int>(jc.size()) || !cells[k][id].simplices.empty())
          fail(MeshErrorKind::Parse, "cell ids must enumerate 0..N-1");
        Cell& cell = cells[k][id];
        cell.dim = k;
        cell.simplices = e.at("simplices").get<std::vector<int>>();
        if (e.contains("boundary"))
          for (const auto& b : e["boundary"]) cell.boundary.push_back({b.at("cell").get<int>(), b.at("sign").get<int>()});
        if (e.contains("star_point")) {
          auto sp = e["star_point"].get<std::vector<double>>();
          cell.star_point = Eigen::Map<Eigen::VectorXd>(sp.data(), sp.size());
        }
      }
    }
    return Mesh(V, simplices, cells);
  } catch (const MeshError&) {
    throw;
  } catch (const std::exception& e) {
    throw MeshError(MeshErrorKind::Parse, std::string("malformed mesh: ") + e.what());
  }
}

Mesh Mesh::load(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw MeshError(MeshErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string Mesh::to_json() const
{
  json j;
  j["ambient_dim"] = m_n;
  j["vertices"] = json::array();
  for (int i = 0; i < num_vertices(); ++i) {
    std::vector<double> v(m_vertices.col(i).data(), m_vertices.col(i).data() + m_n);
    j["vertices"].push_back(v);
  }
  for (int k = 0; k <= m_n; ++k) {
    const std::string key = std::to_string(k);
    j["simplices"][key] = m_simplices[k];
    j["cells"][key] = json::array();
    for (int c = 0; c < num_cells(k); ++c) {
      const auto& cell = m_cells[k][c];
      json e;
      e["id"] = c;
      e["simplices"] = cell.simplices;
      e["boundary"] = json::array();
      for (const auto& b : cell.boundary) e["boundary"].push_back({{"cell", b.cell}, {"sign", b.sign}});
      if (cell.star_point)
        e["star_point"] = std::vector<double>(cell.star_point->data(), cell.star_point->data() + m_n);
      j["cells"][key].push_back(e);
    }
  }
  return j.dump(1);
}

void Mesh::save(const std::string& path) const
{
  std::ofstream out(path);
  out << to_json() << "\n";
}

} // namespace formdeck
