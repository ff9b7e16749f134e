#include "qsm/linalg.hpp"

#include <numeric>

#include "qsm/errors.hpp"

namespace qsm {

namespace {

using Mat = std::vector<std::vector<mpq_class>>;

Mat toMat(std::span<const QVector> rows) {
  Mat m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw DimensionError("rows of different lengths");
    std::vector<mpq_class> row;
    row.reserve(r.size());
    for (const auto& x : r) row.push_back(x.raw());
    m.push_back(std::move(row));
  }
  return m;
}

// Reduced row echelon form in place, pivoting only in the first `cols`
// columns; returns pivot columns.
std::vector<std::size_t> rref(Mat& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const mpq_class inv = 1 / m[row][c];
    const std::size_t width = m[row].size();
    for (std::size_t j = c; j < width; ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t j = c; j < width; ++j)
        if (sgn(m[row][j]) != 0) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

} // namespace

std::size_t rank(std::span<const QVector> rows) {
  if (rows.empty()) return 0;
  Mat m = toMat(rows);
  return rref(m, rows.front().size()).size();
}

std::size_t rank(std::span<const IntVector> rows) {
  if (rows.empty()) return 0;
  // Fraction-free Bareiss elimination.
  const std::size_t cols = rows.front().size();
  std::vector<IntVector> m(rows.begin(), rows.end());
  for (const auto& r : m)
    if (r.size() != cols) throw DimensionError("rows of different lengths");
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

std::vector<IntVector> kernel(std::span<const QVector> rows, std::size_t dim) {
  Mat m = rows.empty() ? Mat{} : toMat(rows);
  if (!rows.empty() && rows.front().size() != dim) throw DimensionError("kernel: dim mismatch");
  const auto pivots = rref(m, dim);
  std::vector<bool> isPivot(dim, false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (isPivot[free]) continue;
    QVector v(dim, Rational(0));
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -Rational::fromMpq(m[i][free]);
    basis.push_back(primitive(v));
  }
  return basis;
}

QVector solve(std::span<const QVector> a, const QVector& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionError("solve: rhs length mismatch");
  Mat m = toMat(a);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw DimensionError("solve: matrix not square");
    m[i].push_back(b[i].raw());
  }
  const auto pivots = rref(m, n);
  if (pivots.size() != n) throw DomainError("solve: singular matrix");
  QVector x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(Rational::fromMpq(m[i][n]));
  return x;
}

IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw DomainError("primitive: zero vector");
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    out.push_back(std::move(q));
  }
  return out;
}

IntVector primitive(const QVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    const Integer d = x.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  IntVector scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) {
    Integer q = x.numerator() * l;
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), x.denominator().get_mpz_t());
    scaled.push_back(std::move(q));
  }
  return primitive(scaled);
}

} // namespace qsm
