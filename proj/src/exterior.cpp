#include <formdeck/exterior.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace formdeck {

std::string Alternator::str() const
{
  std::string s = "(";
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i] + 1);
  }
  return s + ")";
}

long binomial(int n, int k)
{
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {
void enumerate(int d, int k, int start, std::vector<int>& cur, std::vector<Alternator>& out)
{
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(Alternator{d, cur});
    return;
  }
  for (int i = start; i < d; ++i) {
    cur.push_back(i);
    enumerate(d, k, i + 1, cur, out);
    cur.pop_back();
  }
}
} // namespace

const std::vector<Alternator>& alternators(int d, int k)
{
  static std::mutex m;
  static std::map<std::pair<int, int>, std::vector<Alternator>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(d, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Alternator> out;
  if (k >= 0 && k <= d) {
    std::vector<int> cur;
    enumerate(d, k, 0, cur, out);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

int alternator_index(const Alternator& a)
{
  // lexicographic rank of a k-subset of {0..d-1}
  const int d = a.dim, k = a.degree();
  int r = 0, prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int j = prev + 1; j < a.idx[i]; ++j) r += binomial(d - j - 1, k - i - 1);
    prev = a.idx[i];
  }
  return r;
}

int wedge_sign(const Alternator& a, const Alternator& b)
{
  int inversions = 0;
  for (int i : a.idx)
    for (int j : b.idx) {
      if (i == j) return 0;
      if (i > j) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

Alternator alternator_union(const Alternator& a, const Alternator& b)
{
  Alternator u{a.dim, a.idx};
  u.idx.insert(u.idx.end(), b.idx.begin(), b.idx.end());
  std::sort(u.idx.begin(), u.idx.end());
  if (std::adjacent_find(u.idx.begin(), u.idx.end()) != u.idx.end())
    throw std::invalid_argument("alternator_union: overlapping alternators");
  return u;
}

std::pair<int, Alternator> hodge_star_basis(const Alternator& a)
{
  Alternator c{a.dim, {}};
  for (int i = 0; i < a.dim; ++i)
    if (!std::binary_search(a.idx.begin(), a.idx.end(), i)) c.idx.push_back(i);
  return {wedge_sign(a, c), c};
}

int permutation_sign(std::vector<int> v)
{
  int s = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    size_t m = i;
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[j] < v[m]) m = j;
    if (m != i) {
      std::swap(v[i], v[m]);
      s = -s;
    }
  }
  return s;
}

} // namespace formdeck
