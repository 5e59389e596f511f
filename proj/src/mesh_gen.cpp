#include <formdeck/mesh_gen.hpp>
#include <formdeck/exterior.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace formdeck {

namespace {
using Tuple = std::vector<int>;

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

Tuple without(const Tuple& t, int j)
{
  Tuple r;
  for (int i = 0; i < static_cast<int>(t.size()); ++i)
    if (i != j) r.push_back(t[i]);
  return r;
}

Eigen::MatrixXd points_of(const Eigen::MatrixXd& V, const Tuple& t)
{
  Eigen::MatrixXd p(V.rows(), t.size());
  for (size_t i = 0; i < t.size(); ++i) p.col(i) = V.col(t[i]);
  return p;
}

// is every vertex of b in the affine hull of a
bool same_hull(const Eigen::MatrixXd& V, const Tuple& a, const Tuple& b)
{
  if (a.size() == 1) return a == b;
  Eigen::MatrixXd E(V.rows(), a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) E.col(i - 1) = V.col(a[i]) - V.col(a[0]);
  Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(E).householderQ() * Eigen::MatrixXd::Identity(V.rows(), E.cols());
  double scale = E.norm();
  for (int v : b) {
    Eigen::VectorXd off = V.col(v) - V.col(a[0]);
    if ((off - Q * (Q.transpose() * off)).norm() > 1e-10 * scale) return false;
  }
  return true;
}
} // namespace

Mesh build_polytopal_mesh(const Eigen::MatrixXd& V, const std::vector<std::vector<int>>& tops,
                          const std::vector<int>& cell_of_top)
{
  const int n = static_cast<int>(V.rows());
  // simplicial complex, sorted tuples
  std::vector<std::map<Tuple, int>> ids(n + 1);
  std::vector<std::set<Tuple>> all(n + 1);
  for (auto t : tops) {
    std::sort(t.begin(), t.end());
    for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
      Tuple f;
      for (int i = 0; i <= n; ++i)
        if (mask & (1 << i)) f.push_back(t[i]);
      all[f.size() - 1].insert(f);
    }
  }
  std::vector<std::vector<Tuple>> simp(n + 1);
  for (int k = 0; k <= n; ++k)
    for (const auto& t : all[k]) {
      ids[k][t] = static_cast<int>(simp[k].size());
      simp[k].push_back(t);
    }

  // cells as lists of sorted simplex ids, from the top down
  std::vector<std::vector<std::vector<int>>> members(n + 1);
  int ncells = 0;
  for (int c : cell_of_top) ncells = std::max(ncells, c + 1);
  members[n].resize(ncells);
  for (size_t i = 0; i < tops.size(); ++i) {
    Tuple t = tops[i];
    std::sort(t.begin(), t.end());
    members[n][cell_of_top[i]].push_back(ids[n][t]);
  }
  for (int k = n; k >= 1; --k) {
    // faces on the boundary of each k-cell, with their incident cells
    std::map<int, std::set<int>> incident;
    for (int c = 0; c < static_cast<int>(members[k].size()); ++c) {
      std::map<int, int> count;
      for (int s : members[k][c])
        for (int j = 0; j <= k; ++j) count[ids[k - 1][without(simp[k][s], j)]]++;
      for (auto [f, m] : count)
        if (m % 2 == 1) incident[f].insert(c);
    }
    std::vector<int> faces;
    for (auto& [f, _] : incident) faces.push_back(f);
    std::map<int, int> pos;
    for (size_t i = 0; i < faces.size(); ++i) pos[faces[i]] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(faces.size()));
    if (k - 1 >= 1) {
      std::map<int, std::vector<int>> by_ridge;
      for (int f : faces)
        for (int j = 0; j < k; ++j) by_ridge[ids[k - 2][without(simp[k - 1][f], j)]].push_back(f);
      for (auto& [_, fs] : by_ridge)
        for (size_t a = 0; a < fs.size(); ++a)
          for (size_t b = a + 1; b < fs.size(); ++b)
            if (incident[fs[a]] == incident[fs[b]] && same_hull(V, simp[k - 1][fs[a]], simp[k - 1][fs[b]]))
              uf.unite(pos[fs[a]], pos[fs[b]]);
    }
    std::map<int, std::vector<int>> groups;
    for (int f : faces) groups[uf.find(pos[f])].push_back(f);
    std::vector<std::vector<int>> cells;
    for (auto& [_, g] : groups) {
      std::sort(g.begin(), g.end());
      cells.push_back(g);
    }
    std::sort(cells.begin(), cells.end());
    members[k - 1] = cells;
  }

  // orientation of member simplices
  std::vector<std::vector<Tuple>> stored = simp;
  for (int k = 1; k <= n; ++k)
    for (const auto& cell : members[k]) {
      Frame ref;
      if (k == n) {
        ref.dim = n;
        ref.axes = Eigen::MatrixXd::Identity(n, n);
        ref.origin = Eigen::VectorXd::Zero(n);
      } else {
        Eigen::MatrixXd p = points_of(V, simp[k][cell[0]]);
        ref = simplex_frame(p, p.col(0), 1.0);
      }
      for (int s : cell) {
        Tuple t = simp[k][s];
        if (orientation_in_frame(ref, points_of(V, t)) < 0) std::swap(t[k - 1], t[k]);
        stored[k][s] = t;
      }
    }

  // boundary signs
  std::vector<std::map<int, int>> owner(n + 1);
  for (int k = 0; k <= n; ++k)
    for (int c = 0; c < static_cast<int>(members[k].size()); ++c)
      for (int s : members[k][c]) owner[k][s] = c;
  std::vector<std::vector<Cell>> cells(n + 1);
  for (int k = 0; k <= n; ++k)
    for (const auto& m : members[k]) {
      Cell c;
      c.dim = k;
      c.simplices = m;
      if (k > 0) {
        std::map<int, int> chain;
        for (int s : m) {
          const Tuple& t = stored[k][s];
          for (int j = 0; j <= k; ++j) {
            Tuple f = without(t, j);
            Tuple sorted = f;
            std::sort(sorted.begin(), sorted.end());
            int fid = ids[k - 1][sorted];
            const Tuple& st = stored[k - 1][fid];
            std::vector<int> p;
            for (int v : f) p.push_back(static_cast<int>(std::find(st.begin(), st.end(), v) - st.begin()));
            chain[fid] += ((j % 2) ? -1 : 1) * permutation_sign(p);
          }
        }
        std::map<int, int> sign;
        for (auto [f, v] : chain)
          if (v != 0 && owner[k - 1].count(f)) sign[owner[k - 1][f]] = v;
        for (auto [cell, s] : sign) c.boundary.push_back({cell, s});
      }
      cells[k].push_back(c);
    }
  return Mesh(V, stored, cells);
}

Mesh cartesian_mesh(int n, int N, const std::vector<bool>& keep)
{
  const int P = N + 1;
  const int nv = n == 2 ? P * P : P * P * P;
  Eigen::MatrixXd V(n, nv);
  auto vid2 = [&](int i, int j) { return i + P * j; };
  auto vid3 = [&](int i, int j, int k) { return i + P * (j + P * k); };
  if (n == 2) {
    for (int j = 0; j < P; ++j)
      for (int i = 0; i < P; ++i) V.col(vid2(i, j)) << double(i) / N, double(j) / N;
  } else {
    for (int k = 0; k < P; ++k)
      for (int j = 0; j < P; ++j)
        for (int i = 0; i < P; ++i) V.col(vid3(i, j, k)) << double(i) / N, double(j) / N, double(k) / N;
  }
  std::vector<std::vector<int>> tops;
  std::vector<int> cell_of;
  int c = 0, lin = 0;
  if (n == 2) {
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i, ++lin) {
        if (!keep.empty() && !keep[lin]) continue;
        int a = vid2(i, j), b = vid2(i + 1, j), d = vid2(i + 1, j + 1), e = vid2(i, j + 1);
        tops.push_back({a, b, d});
        tops.push_back({a, d, e});
        cell_of.push_back(c);
        cell_of.push_back(c);
        ++c;
      }
  } else {
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i, ++lin) {
          if (!keep.empty() && !keep[lin]) continue;
          for (const auto& p : perms) {
            int x[3] = {i, j, k};
            std::vector<int> t{vid3(x[0], x[1], x[2])};
            for (int s = 0; s < 3; ++s) {
              x[p[s]] += 1;
              t.push_back(vid3(x[0], x[1], x[2]));
            }
            tops.push_back(t);
            cell_of.push_back(c);
          }
          ++c;
        }
  }
  // drop unused vertices
  std::vector<int> remap(nv, -1);
  int used = 0;
  for (auto& t : tops)
    for (int v : t)
      if (remap[v] < 0) remap[v] = 0;
  for (int v = 0; v < nv; ++v)
    if (remap[v] == 0) remap[v] = used++;
  Eigen::MatrixXd W(n, used);
  for (int v = 0; v < nv; ++v)
    if (remap[v] >= 0) W.col(remap[v]) = V.col(v);
  for (auto& t : tops)
    for (int& v : t) v = remap[v];
  return build_polytopal_mesh(W, tops, cell_of);
}

Mesh square_mesh(int level) { return cartesian_mesh(2, 1 << (level - 1)); }
Mesh cube_mesh(int level) { return cartesian_mesh(3, 1 << (level - 1)); }

Mesh lshape_mesh(int level)
{
  const int N = 1 << level;
  std::vector<bool> keep(N * N, true);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (2 * i >= N && 2 * j >= N) keep[i + N * j] = false;
  return cartesian_mesh(2, N, keep);
}

Mesh annulus_mesh(int level)
{
  const int N = 1 << (level + 1);
  std::vector<bool> keep(N * N, true);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (4 * i >= N && 4 * i < 3 * N && 4 * j >= N && 4 * j < 3 * N) keep[i + N * j] = false;
  return cartesian_mesh(2, N, keep);
}

Mesh agglomerated_mesh(int level, std::uint64_t seed)
{
  const int N = 1 << level;
  const int P = N + 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.15 / N, 0.15 / N);
  Eigen::MatrixXd V(2, P * P);
  for (int j = 0; j < P; ++j)
    for (int i = 0; i < P; ++i) {
      V.col(i + P * j) << double(i) / N, double(j) / N;
      if (i > 0 && i < N && j > 0 && j < N) V.col(i + P * j) += Eigen::Vector2d(jitter(rng), jitter(rng));
    }
  std::vector<std::vector<int>> tops;
  std::bernoulli_distribution coin(0.5);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      int a = i + P * j, b = a + 1, d = a + P + 1, e = a + P;
      if (coin(rng)) {
        tops.push_back({a, b, d});
        tops.push_back({a, d, e});
      } else {
        tops.push_back({a, b, e});
        tops.push_back({b, d, e});
      }
    }
  // triangle adjacency through shared edges
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (int t = 0; t < static_cast<int>(tops.size()); ++t)
    for (int q = 0; q < 3; ++q) {
      int u = tops[t][q], v = tops[t][(q + 1) % 3];
      edge_tris[{std::min(u, v), std::max(u, v)}].push_back(t);
    }
  std::vector<std::vector<int>> nbr(tops.size());
  for (auto& [_, ts] : edge_tris)
    if (ts.size() == 2) {
      nbr[ts[0]].push_back(ts[1]);
      nbr[ts[1]].push_back(ts[0]);
    }
  std::vector<int> order(tops.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> cell(tops.size(), -1);
  int nc = 0;
  for (int t : order) {
    if (cell[t] >= 0) continue;
    cell[t] = nc;
    std::vector<int> free;
    for (int u : nbr[t])
      if (cell[u] < 0) free.push_back(u);
    if (!free.empty()) cell[free[rng() % free.size()]] = nc;
    ++nc;
  }
  return build_polytopal_mesh(V, tops, cell);
}

Mesh pyramid_mesh()
{
  Eigen::MatrixXd V(3, 6);
  V.col(0) << 0, 0, 0;
  V.col(1) << 1, 0, 0;
  V.col(2) << 1, 1, 0;
  V.col(3) << 0, 1, 0;
  V.col(4) << 0.5, 0.5, 0;
  V.col(5) << 0.5, 0.5, 1;
  std::vector<std::vector<int>> tops{{0, 1, 4, 5}, {1, 2, 4, 5}, {2, 3, 4, 5}, {3, 0, 4, 5}};
  return build_polytopal_mesh(V, tops, {0, 0, 0, 0});
}

Mesh single_cell_mesh(const std::string& shape)
{
  if (shape == "triangle") {
    Eigen::MatrixXd V(2, 3);
    V << 0, 1, 0,
         0, 0, 1;
    return build_polytopal_mesh(V, {{0, 1, 2}}, {0});
  }
  if (shape == "pentagon") {
    // irregular convex pentagon fanned from its first vertex
    Eigen::MatrixXd V(2, 5);
    V << 0, 1.0, 1.3, 0.6, -0.2,
         0, -0.1, 0.7, 1.2, 0.8;
    return build_polytopal_mesh(V, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}}, {0, 0, 0});
  }
  if (shape == "square") return square_mesh(1);
  if (shape == "tetrahedron") {
    Eigen::MatrixXd V(3, 4);
    V << 0, 1, 0, 0,
         0, 0, 1, 0,
         0, 0, 0, 1;
    return build_polytopal_mesh(V, {{0, 1, 2, 3}}, {0});
  }
  if (shape == "cube") return cube_mesh(1);
  if (shape == "pyramid") return pyramid_mesh();
  throw std::invalid_argument("unknown cell shape: " + shape);
}

const std::vector<std::string>& shape_names()
{
  static const std::vector<std::string> names{"triangle", "square", "pentagon", "tetrahedron", "cube", "pyramid"};
  return names;
}

const std::vector<std::string>& family_names()
{
  static const std::vector<std::string> names{"square", "lshape", "annulus", "cube", "agglomerated", "pyramid"};
  return names;
}

Mesh generate(const std::string& family, int level, std::uint64_t seed)
{
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (family == "square") return square_mesh(level);
  if (family == "lshape") return lshape_mesh(level);
  if (family == "annulus") return annulus_mesh(level);
  if (family == "cube") return cube_mesh(level);
  if (family == "agglomerated") return agglomerated_mesh(level, seed);
  if (family == "pyramid") return pyramid_mesh();
  throw std::invalid_argument("unknown family: " + family);
}

std::uint64_t default_seed()
{
  if (const char* s = std::getenv("FORMDECK_SEED")) return std::strtoull(s, nullptr, 10);
  return 42;
}

} // namespace formdeck
