#include <formdeck/polynomial.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace formdeck {

namespace {
double factorial(int n)
{
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void enumerate_degree(int nvars, int deg, int pos, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out)
{
  if (pos == nvars - 1) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (int a = deg; a >= 0; --a) {
    cur[pos] = a;
    enumerate_degree(nvars, deg - a, pos + 1, cur, out);
  }
}
} // namespace

MonomialTable::MonomialTable(int nvars, int degree) : m_nvars(nvars), m_degree(degree)
{
  if (nvars == 0) {
    m_exps.push_back({});
    m_total.push_back(0);
    m_lookup.assign(1, 0);
    return;
  }
  for (int g = 0; g <= degree; ++g) {
    std::vector<int> cur(nvars, 0);
    std::vector<std::vector<int>> block;
    enumerate_degree(nvars, g, 0, cur, block);
    for (auto& e : block) {
      m_exps.push_back(e);
      m_total.push_back(g);
    }
  }
  long span = 1;
  for (int i = 0; i < nvars; ++i) span *= (degree + 1);
  m_lookup.assign(span, -1);
  for (int i = 0; i < size(); ++i) m_lookup[encode(m_exps[i])] = i;
}

long MonomialTable::encode(const std::vector<int>& e) const
{
  long code = 0;
  for (int i = 0; i < m_nvars; ++i) code = code * (m_degree + 1) + e[i];
  return code;
}

int MonomialTable::index_of(const std::vector<int>& e) const
{
  int tot = 0;
  for (int x : e) {
    if (x < 0) return -1;
    tot += x;
  }
  if (tot > m_degree) return -1;
  return m_lookup[encode(e)];
}

std::shared_ptr<const MonomialTable> MonomialTable::get(int nvars, int degree)
{
  static std::mutex m;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialTable>> cache;
  if (degree < 0) degree = 0;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_shared<const MonomialTable>(nvars, degree);
  return slot;
}

int monomial_count(int d, int r)
{
  if (r < 0) return 0;
  long c = 1;
  for (int i = 1; i <= d; ++i) c = c * (r + i) / i;
  return static_cast<int>(c);
}

Polynomial::Polynomial(int nvars, int degree)
    : m_nvars(nvars), m_degree(std::max(degree, 0)),
      m_table(MonomialTable::get(nvars, std::max(degree, 0))),
      m_c(m_table->size(), 0.0)
{
}

Polynomial Polynomial::constant(int nvars, double c)
{
  Polynomial p(nvars, 0);
  p.m_c[0] = c;
  return p;
}

Polynomial Polynomial::coordinate(int nvars, int j)
{
  Polynomial p(nvars, 1);
  std::vector<int> e(nvars, 0);
  e[j] = 1;
  p.m_c[p.m_table->index_of(e)] = 1.0;
  return p;
}

Polynomial Polynomial::with_degree(int degree) const
{
  Polynomial q(m_nvars, degree);
  for (int i = 0; i < m_table->size(); ++i) {
    if (m_c[i] == 0.0) continue;
    int j = q.m_table->index_of(m_table->exponents(i));
    if (j < 0) throw std::invalid_argument("Polynomial::with_degree: truncation of non-zero term");
    q.m_c[j] = m_c[i];
  }
  return q;
}

int Polynomial::effective_degree(double tol) const
{
  int e = -1;
  for (int i = 0; i < m_table->size(); ++i)
    if (std::abs(m_c[i]) > tol) e = std::max(e, m_table->total_degree(i));
  return e;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
  if (o.m_degree > m_degree) *this = with_degree(o.m_degree);
  if (o.m_degree == m_degree) {
    for (size_t i = 0; i < m_c.size(); ++i) m_c[i] += o.m_c[i];
  } else {
    for (int i = 0; i < o.m_table->size(); ++i)
      m_c[m_table->index_of(o.m_table->exponents(i))] += o.m_c[i];
  }
  return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
  for (double& x : m_c) x *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
  Polynomial r(a.m_nvars, a.m_degree + b.m_degree);
  std::vector<int> e(a.m_nvars);
  for (int i = 0; i < a.m_table->size(); ++i) {
    if (a.m_c[i] == 0.0) continue;
    const auto& ea = a.m_table->exponents(i);
    for (int j = 0; j < b.m_table->size(); ++j) {
      if (b.m_c[j] == 0.0) continue;
      const auto& eb = b.m_table->exponents(j);
      for (int v = 0; v < a.m_nvars; ++v) e[v] = ea[v] + eb[v];
      r.m_c[r.m_table->index_of(e)] += a.m_c[i] * b.m_c[j];
    }
  }
  return r;
}

Polynomial Polynomial::derivative(int j) const
{
  Polynomial r(m_nvars, m_degree > 0 ? m_degree - 1 : 0);
  for (int i = 0; i < m_table->size(); ++i) {
    auto e = m_table->exponents(i);
    if (e[j] == 0 || m_c[i] == 0.0) continue;
    double f = e[j];
    e[j] -= 1;
    r.m_c[r.m_table->index_of(e)] += f * m_c[i];
  }
  return r;
}

double Polynomial::evaluate(const Eigen::VectorXd& y) const
{
  double s = 0.0;
  for (int i = 0; i < m_table->size(); ++i) {
    if (m_c[i] == 0.0) continue;
    double t = m_c[i];
    const auto& e = m_table->exponents(i);
    for (int v = 0; v < m_nvars; ++v) t *= std::pow(y(v), e[v]);
    s += t;
  }
  return s;
}

Polynomial Polynomial::compose_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) const
{
  const int m = static_cast<int>(A.cols());
  Polynomial out(m, m_degree);
  // powers[v][p] = (b_v + A_v . z)^p
  std::vector<std::vector<Polynomial>> powers(m_nvars);
  for (int v = 0; v < m_nvars; ++v) {
    Polynomial lin(m, 1);
    lin[0] = b(v);
    for (int i = 0; i < m; ++i) {
      std::vector<int> e(m, 0);
      e[i] = 1;
      lin[lin.m_table->index_of(e)] = A(v, i);
    }
    powers[v].push_back(Polynomial::constant(m, 1.0));
    for (int p = 1; p <= m_degree; ++p) powers[v].push_back(powers[v].back() * lin);
  }
  for (int i = 0; i < m_table->size(); ++i) {
    if (m_c[i] == 0.0) continue;
    const auto& e = m_table->exponents(i);
    Polynomial t = Polynomial::constant(m, m_c[i]);
    for (int v = 0; v < m_nvars; ++v)
      if (e[v]) t = t * powers[v][e[v]];
    out += t;
  }
  return out.with_degree(m_degree);
}

double Polynomial::integrate_reference_simplex() const
{
  double s = 0.0;
  for (int i = 0; i < m_table->size(); ++i) {
    if (m_c[i] == 0.0) continue;
    const auto& e = m_table->exponents(i);
    double num = 1.0;
    for (int x : e) num *= factorial(x);
    s += m_c[i] * num / factorial(m_nvars + m_table->total_degree(i));
  }
  return s;
}

} // namespace formdeck
