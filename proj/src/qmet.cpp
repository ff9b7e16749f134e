#include "qsm/qmet.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "qsm/errors.hpp"

namespace qsm::qmet {

PairIndex::PairIndex(std::size_t n) : n_(n) {
  if (n < 3) throw DomainError("n must be at least 3, got " + std::to_string(n));
}

std::size_t PairIndex::index(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || i == j) throw DomainError("not an off-diagonal pair");
  return i * (n_ - 1) + (j < i ? j : j - 1);
}

std::pair<std::size_t, std::size_t> PairIndex::pair(std::size_t k) const {
  if (k >= size()) throw DomainError("pair index out of range");
  const std::size_t i = k / (n_ - 1);
  std::size_t j = k % (n_ - 1);
  if (j >= i) ++j;
  return {i, j};
}

RawMatrix::RawMatrix(std::vector<std::vector<Rational>> entries) : entries_(std::move(entries)) {
  const auto n = entries_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) throw ShapeError("matrix is not square");
    if (!entries_[i][i].isZero()) throw ShapeError("nonzero diagonal entry at row " + std::to_string(i + 1));
  }
}

RawMatrix RawMatrix::fromVector(std::size_t n, const QVector& v) {
  const PairIndex idx(n);
  if (v.size() != idx.size()) throw DimensionError("vector length does not match n(n-1)");
  std::vector<std::vector<Rational>> e(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto [i, j] = idx.pair(k);
    e[i][j] = v[k];
  }
  return RawMatrix(std::move(e));
}

QVector RawMatrix::toVector() const {
  const PairIndex idx(n());
  QVector v(idx.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto [i, j] = idx.pair(k);
    v[k] = entries_[i][j];
  }
  return v;
}

ExponentMatrix::ExponentMatrix(std::vector<std::vector<Integer>> entries) : entries_(std::move(entries)) {
  const auto n = entries_.size();
  if (n < 3) throw ShapeError("exponent matrices need n >= 3");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) throw ShapeError("matrix is not square");
    if (entries_[i][i] != 0) throw ShapeError("nonzero diagonal entry at row " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && entries_[i][j] < 0) throw NotAMemberError("violates " + nLabel(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k && entries_[i][j] + entries_[j][k] < entries_[i][k])
          throw NotAMemberError("violates " + tLabel(i, j, k));
}

ExponentMatrix ExponentMatrix::fromVector(std::size_t n, const IntVector& v) {
  const PairIndex idx(n);
  if (v.size() != idx.size()) throw DimensionError("vector length does not match n(n-1)");
  std::vector<std::vector<Integer>> e(n, std::vector<Integer>(n, 0));
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto [i, j] = idx.pair(k);
    e[i][j] = v[k];
  }
  return ExponentMatrix(std::move(e));
}

IntVector ExponentMatrix::toVector() const {
  const PairIndex idx(n());
  IntVector v(idx.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto [i, j] = idx.pair(k);
    v[k] = entries_[i][j];
  }
  return v;
}

RawMatrix ExponentMatrix::raw() const {
  std::vector<std::vector<Rational>> e(n(), std::vector<Rational>(n(), Rational(0)));
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j) e[i][j] = Rational(entries_[i][j]);
  return RawMatrix(std::move(e));
}

ExponentMatrix ExponentMatrix::transposed() const {
  auto e = entries_;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j) e[i][j] = entries_[j][i];
  return ExponentMatrix(std::move(e));
}

std::string nLabel(std::size_t i, std::size_t j) {
  return "N:" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

std::string tLabel(std::size_t i, std::size_t j, std::size_t k) {
  return "T:" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1);
}

std::string FacetLabel::toString() const { return kind == LabelKind::N ? nLabel(i, j) : tLabel(i, j, k); }

FacetLabel parseLabel(const std::string& label, std::size_t n) {
  auto fail = [&] { return LookupError("bad facet label '" + label + "' for n = " + std::to_string(n)); };
  if (label.size() < 3 || label[1] != ':' || (label[0] != 'N' && label[0] != 'T')) throw fail();
  std::vector<std::size_t> idx;
  std::stringstream ss(label.substr(2));
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw fail();
    const auto v = std::stoul(part);
    if (v < 1 || v > n) throw fail();
    idx.push_back(v - 1);
  }
  const bool isN = label[0] == 'N';
  if (idx.size() != (isN ? 2U : 3U)) throw fail();
  if (idx[0] == idx[1] || (!isN && (idx[2] == idx[0] || idx[2] == idx[1]))) throw fail();
  return {isN ? LabelKind::N : LabelKind::T, idx[0], idx[1], isN ? 0 : idx[2]};
}

HDescription buildH(std::size_t n) {
  const PairIndex idx(n);
  const std::size_t d = idx.size();
  std::vector<HRow> rows;
  rows.reserve(rowCount(n));
  for (std::size_t k = 0; k < d; ++k) {
    auto [i, j] = idx.pair(k);
    QVector c(d, Rational(0));
    c[k] = Rational(1);
    rows.push_back({nLabel(i, j), std::move(c)});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        QVector c(d, Rational(0));
        c[idx.index(i, j)] = Rational(1);
        c[idx.index(j, k)] = Rational(1);
        c[idx.index(i, k)] = Rational(-1);
        rows.push_back({tLabel(i, j, k), std::move(c)});
      }
  return HDescription(d, std::move(rows));
}

MembershipReport isQuasiSemimetric(const RawMatrix& m) {
  const std::size_t n = m.n();
  MembershipReport rep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m.at(i, j).sign() < 0) rep.violated.push_back(nLabel(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k && m.at(i, j) + m.at(j, k) < m.at(i, k))
          rep.violated.push_back(tLabel(i, j, k));
  rep.member = rep.violated.empty();
  return rep;
}

ExponentMatrix orientedCut(const std::vector<std::size_t>& subset, std::size_t n) {
  PairIndex check(n);
  std::vector<bool> in(n, false);
  for (auto i : subset) {
    if (i >= n) throw DomainError("cut index out of range");
    in[i] = true;
  }
  const auto size = std::count(in.begin(), in.end(), true);
  if (size == 0 || static_cast<std::size_t>(size) == n)
    throw DomainError("oriented cut needs a proper nonempty subset");
  std::vector<std::vector<Integer>> e(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (in[i] && !in[j]) e[i][j] = 1;
  return ExponentMatrix(std::move(e));
}

std::string Line::toString() const {
  return std::string(kind == LineKind::R ? "R" : "C") + "(" + std::to_string(r + 1) + ")";
}

ExponentMatrix line(LineKind kind, std::size_t r, std::size_t n) {
  PairIndex check(n);
  if (r >= n) throw DomainError("line index out of range");
  if (kind == LineKind::R) return orientedCut({r}, n);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != r) rest.push_back(i);
  return orientedCut(rest, n);
}

std::vector<Line> allLines(std::size_t n) {
  std::vector<Line> out;
  for (std::size_t r = 0; r < n; ++r) out.push_back({LineKind::R, r});
  for (std::size_t r = 0; r < n; ++r) out.push_back({LineKind::C, r});
  return out;
}

ExponentMatrix hWitness(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  PairIndex check(n);
  if (i >= n || j >= n || k >= n || i == j || j == k || i == k)
    throw DomainError("hWitness needs three distinct indices below n");
  std::vector<std::vector<Integer>> e(n, std::vector<Integer>(n, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      if (r == s) continue;
      auto is = [&](std::size_t a, std::size_t b) { return r == a && s == b; };
      if (is(i, j) || is(j, k) || is(i, k))
        e[r][s] = 0;
      else if (is(j, i) || is(k, j) || (r == i && s != j && s != k) || (s == k && r != i && r != j))
        e[r][s] = 3;
      else if (is(k, i) || (r == j && s != i && s != k) || (s == j && r != i && r != k))
        e[r][s] = 4;
      else
        e[r][s] = 5;
    }
  return ExponentMatrix(std::move(e));
}

ExponentMatrix facetWitness(const std::string& label, std::size_t n) {
  const auto f = parseLabel(label, n);
  std::vector<std::vector<Integer>> e(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (f.kind == LabelKind::N) {
        const auto r = f.i, s = f.j;
        e[i][j] = (i == r && j == s) ? 0 : ((i == s || j == r) ? 2 : 1);
      } else {
        const auto r = f.i, s = f.j, t = f.k;
        e[i][j] = ((i == r && j == s) || (i == s && j == t)) ? 1 : 2;
      }
    }
  return ExponentMatrix(std::move(e));
}

SupportStats supportStats(const RawMatrix& m) {
  SupportStats st;
  const auto n = m.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!m.at(i, j).isZero()) ++st.s;
      if (i < j && (m.at(i, j).sign() > 0 || m.at(j, i).sign() > 0)) ++st.p;
    }
  return st;
}

std::size_t strictBound(const ExponentMatrix& m) {
  const auto st = supportStats(m.raw());
  return (m.n() - 2) * st.p + st.s;
}

std::size_t strictCount(const ExponentMatrix& m) {
  const auto n = m.n();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m.at(i, j) > 0) ++count;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && m.at(i, j) + m.at(j, k) > m.at(i, k)) ++count;
    }
  return count;
}

std::vector<std::string> lineExactLabelsClosedForm(const Line& l, std::size_t n) {
  PairIndex check(n);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (l.kind == LineKind::R ? i != l.r : j != l.r)) out.push_back(nLabel(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k && j != l.r) out.push_back(tLabel(i, j, k));
  return out;
}

void enumerateMembers(std::size_t n, long bound, std::uint64_t budget,
                      const std::function<void(const IntVector&)>& visit) {
  const PairIndex idx(n);
  if (bound < 0) throw DomainError("bound must be nonnegative");
  const std::size_t d = idx.size();
  // Triangle rows grouped by the last coordinate they involve.
  std::vector<std::vector<std::array<std::size_t, 3>>> checks(d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        std::array<std::size_t, 3> t{idx.index(i, j), idx.index(j, k), idx.index(i, k)};
        checks[std::max({t[0], t[1], t[2]})].push_back(t);
      }
  std::vector<long> x(d, 0);
  IntVector out(d);
  std::uint64_t nodes = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == d) {
      for (std::size_t q = 0; q < d; ++q) out[q] = x[q];
      visit(out);
      return;
    }
    for (long v = 0; v <= bound; ++v) {
      if (++nodes > budget)
        throw BudgetExceeded("member enumeration exceeded " + std::to_string(budget) + " nodes");
      x[pos] = v;
      bool ok = true;
      for (const auto& t : checks[pos])
        if (x[t[0]] + x[t[1]] < x[t[2]]) {
          ok = false;
          break;
        }
      if (ok) rec(pos + 1);
    }
    x[pos] = 0;
  };
  rec(0);
}

MinSupportResult minSupportScan(std::size_t n, long bound, std::uint64_t budget) {
  if (bound < 1) throw DomainError("minSupportScan needs bound >= 1");
  MinSupportResult res;
  res.minSupport = n * (n - 1) + 1;
  std::vector<IntVector> lineVectors;
  for (const auto& l : allLines(n)) lineVectors.push_back(line(l, n).toVector());
  enumerateMembers(n, bound, budget, [&](const IntVector& v) {
    std::size_t s = 0;
    for (const auto& x : v)
      if (x != 0) ++s;
    if (s == 0) return;
    ++res.members;
    res.minSupport = std::min(res.minSupport, s);
    if (s == n - 1) {
      ++res.minimalSupportMembers;
      // A positive multiple of a line has one repeated value on the line's support.
      bool isLine = false;
      for (const auto& lv : lineVectors) {
        Integer c = 0;
        bool ok = true;
        for (std::size_t q = 0; q < v.size() && ok; ++q) {
          if (lv[q] == 0) {
            ok = v[q] == 0;
          } else {
            if (c == 0) c = v[q];
            ok = v[q] == c && c > 0;
          }
        }
        if (ok) {
          isLine = true;
          break;
        }
      }
      if (!isLine && res.minimalAreLines) {
        res.minimalAreLines = false;
        res.counterexample = v;
      }
    }
  });
  return res;
}

} // namespace qsm::qmet

namespace qsm::qmet {

std::vector<bool> certifiedFacets(std::size_t n) {
  const auto h = buildH(n);
  std::vector<bool> mask(h.size(), false);
  for (std::size_t f = 0; f < h.size(); ++f) {
    const auto& label = h.row(f).label;
    mask[f] = exactSet(h, facetWitness(label, n).toVector()) == std::vector<std::string>{label};
  }
  return mask;
}

IntVector shortestPathClosure(std::size_t n, const IntVector& weights) {
  const PairIndex idx(n);
  if (weights.size() != idx.size()) throw DimensionError("weights must have n(n-1) entries");
  std::vector<std::vector<Integer>> d(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (weights[k] < 0) throw DomainError("weights must be nonnegative");
    auto [i, j] = idx.pair(k);
    d[i][j] = weights[k];
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
  IntVector out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto [i, j] = idx.pair(k);
    out[k] = d[i][j];
  }
  return out;
}

} // namespace qsm::qmet
