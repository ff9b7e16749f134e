#pragma once

// Reference computations for the tests. They deliberately avoid the library's
// elimination, DD and search code.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using IVec = std::vector<long>;
using QMat = std::vector<std::vector<mpq_class>>;

// Rows of the quasi-semimetric cone on n points in pair order, nonnegativity
// first, then triangles (i,j,k) lexicographically: x_ij + x_jk - x_ik >= 0.
inline std::size_t pairIndex(std::size_t n, std::size_t i, std::size_t j) { return i * (n - 1) + (j < i ? j : j - 1); }

inline std::vector<IVec> qmetRows(std::size_t n) {
  const std::size_t d = n * (n - 1);
  std::vector<IVec> rows;
  for (std::size_t k = 0; k < d; ++k) {
    IVec r(d, 0);
    r[k] = 1;
    rows.push_back(r);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        IVec r(d, 0);
        r[pairIndex(n, i, j)] += 1;
        r[pairIndex(n, j, k)] += 1;
        r[pairIndex(n, i, k)] -= 1;
        rows.push_back(r);
      }
  return rows;
}

inline long dot(const IVec& a, const IVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool member(const std::vector<IVec>& rows, const IVec& x) {
  return std::all_of(rows.begin(), rows.end(), [&](const IVec& r) { return dot(r, x) >= 0; });
}

// Null space of `rows` when it is one-dimensional, scaled to a primitive
// integer vector; empty otherwise.
inline IVec nullLine(const std::vector<IVec>& rows, std::size_t d) {
  QMat m;
  for (const auto& r : rows) {
    std::vector<mpq_class> q;
    for (auto v : r) q.emplace_back(v);
    m.push_back(q);
  }
  std::vector<int> pivotOf(d, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < d && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    mpq_class inv = 1 / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] != 0) {
        mpq_class f = m[r][c];
        for (std::size_t k = 0; k < d; ++k) m[r][k] -= f * m[rank][k];
      }
    pivotOf[c] = static_cast<int>(rank++);
  }
  if (rank + 1 != d) return {};
  std::size_t freeCol = 0;
  while (pivotOf[freeCol] >= 0) ++freeCol;
  std::vector<mpq_class> v(d, 0);
  v[freeCol] = 1;
  for (std::size_t c = 0; c < d; ++c)
    if (pivotOf[c] >= 0) v[c] = -m[pivotOf[c]][freeCol];
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& x : v) {
    z.push_back(mpz_class(x * l));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  IVec out;
  for (auto& x : z) out.push_back(mpz_class(x / g).get_si());
  return out;
}

// Extreme rays by testing every (d-1)-subset of rows for a one-dimensional
// null space whose direction (either sign) lies in the cone.
inline std::set<IVec> bruteForceRays(const std::vector<IVec>& rows, std::size_t d) {
  std::set<IVec> out;
  const std::size_t m = rows.size();
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(d - 1), true);
  do {
    std::vector<IVec> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) sub.push_back(rows[i]);
    IVec v = nullLine(sub, d);
    if (v.empty()) continue;
    for (int sign : {1, -1}) {
      IVec w = v;
      for (auto& x : w) x *= sign;
      if (member(rows, w)) out.insert(w);
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Leibniz determinant.
inline long det(const std::vector<IVec>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  long total = 0;
  do {
    long term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][p[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Members of E_3 with 0/1 entries, minimal among the nonzero ones.
inline std::vector<IVec> binaryMinimalE3() {
  const auto rows = qmetRows(3);
  std::vector<IVec> nonzero;
  for (unsigned mask = 1; mask < 64; ++mask) {
    IVec x(6);
    for (std::size_t i = 0; i < 6; ++i) x[i] = mask >> i & 1u;
    if (member(rows, x)) nonzero.push_back(x);
  }
  std::vector<IVec> out;
  for (const auto& y : nonzero) {
    bool minimal = true;
    for (const auto& z : nonzero) {
      if (z == y) continue;
      bool below = true;
      for (std::size_t i = 0; i < 6; ++i) below = below && z[i] <= y[i];
      if (below) minimal = false;
    }
    if (minimal) out.push_back(y);
  }
  return out;
}

// H(1,2,3) on six points, entry by entry.
inline const std::vector<std::vector<long>>& figureH123() {
  static const std::vector<std::vector<long>> m{
      {0, 0, 0, 3, 3, 3}, {3, 0, 0, 4, 4, 4}, {4, 3, 0, 5, 5, 5},
      {5, 4, 3, 0, 5, 5}, {5, 4, 3, 5, 0, 5}, {5, 4, 3, 5, 5, 0}};
  return m;
}

} // namespace oracle
