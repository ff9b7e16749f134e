#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsm/cone.hpp"
#include "qsm/rational.hpp"

// The quasi-semimetric cone on n points. Indices are 0-based in the API and
// 1-based in labels and printed output.
namespace qsm::qmet {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// The ordered pairs (i,j), i != j, in row-major order: the coordinates of the
/// ambient space.
class PairIndex {
public:
  /// Throws DomainError for n < 3.
  explicit PairIndex(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ * (n_ - 1); }
  std::size_t index(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> pair(std::size_t k) const;

private:
  std::size_t n_;
};

/// Unchecked square grid with zero diagonal; carries candidates.
class RawMatrix {
public:
  /// Throws ShapeError when the grid is not square or has a nonzero diagonal.
  explicit RawMatrix(std::vector<std::vector<Rational>> entries);
  static RawMatrix fromVector(std::size_t n, const QVector& v);

  std::size_t n() const noexcept { return entries_.size(); }
  const Rational& at(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
  QVector toVector() const;

private:
  std::vector<std::vector<Rational>> entries_;
};

/// Integer quasi-semimetric: zero diagonal, nonnegative, all triangle
/// inequalities hold. Validated on construction.
class ExponentMatrix {
public:
  /// Throws ShapeError or NotAMemberError (naming the first violated row).
  explicit ExponentMatrix(std::vector<std::vector<Integer>> entries);
  static ExponentMatrix fromVector(std::size_t n, const IntVector& v);

  std::size_t n() const noexcept { return entries_.size(); }
  const Integer& at(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
  const std::vector<std::vector<Integer>>& entries() const noexcept { return entries_; }
  IntVector toVector() const;
  RawMatrix raw() const;
  ExponentMatrix transposed() const;

  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

private:
  std::vector<std::vector<Integer>> entries_;
};

enum class LabelKind { N, T };

struct FacetLabel {
  LabelKind kind;
  std::size_t i;
  std::size_t j;
  std::size_t k; // unused for N labels

  std::string toString() const;
  friend bool operator==(const FacetLabel&, const FacetLabel&) = default;
};

std::string nLabel(std::size_t i, std::size_t j);
std::string tLabel(std::size_t i, std::size_t j, std::size_t k);
/// Parses "N:i,j" or "T:i,j,k" (1-based, distinct, at most n). Throws LookupError.
FacetLabel parseLabel(const std::string& label, std::size_t n);

/// Nonnegativity rows N:i,j in pair order followed by triangle rows T:i,j,k
/// in lexicographic order; n(n-1)^2 rows in dimension n(n-1).
HDescription buildH(std::size_t n);
inline std::size_t rowCount(std::size_t n) { return n * (n - 1) * (n - 1); }

struct MembershipReport {
  bool member = false;
  std::vector<std::string> violated;
};

/// Throws ShapeError on a nonzero diagonal.
MembershipReport isQuasiSemimetric(const RawMatrix& m);

/// delta(I): 1 at (i,j) iff i in I and j not in I. Throws DomainError
/// when I is empty, everything, or out of range.
ExponentMatrix orientedCut(const std::vector<std::size_t>& subset, std::size_t n);

enum class LineKind { R, C };

struct Line {
  LineKind kind;
  std::size_t r;

  std::string toString() const;
  friend bool operator==(const Line&, const Line&) = default;
};

/// R(r) has ones on row r, C(r) ones on column r.
ExponentMatrix line(LineKind kind, std::size_t r, std::size_t n);
inline ExponentMatrix line(const Line& l, std::size_t n) { return line(l.kind, l.r, n); }
/// R(0..n-1) then C(0..n-1).
std::vector<Line> allLines(std::size_t n);

/// The matrix exactly satisfying N_ij, N_jk, N_ik, T_ijk and nothing else.
ExponentMatrix hWitness(std::size_t n, std::size_t i, std::size_t j, std::size_t k);

/// A point satisfying exactly the given row and every other row strictly.
ExponentMatrix facetWitness(const std::string& label, std::size_t n);

/// Facet mask of buildH(n) certified row by row: facetWitness(label) must be
/// exact on that row alone.
std::vector<bool> certifiedFacets(std::size_t n);

/// Shortest-path closure of nonnegative weights on the pairs (pair order);
/// every member arises this way from itself.
IntVector shortestPathClosure(std::size_t n, const IntVector& weights);

struct SupportStats {
  std::size_t s = 0; // nonzero entries
  std::size_t p = 0; // unordered pairs with some positive entry
};
SupportStats supportStats(const RawMatrix& m);

/// (n-2) p + s, a lower bound on the number of rows satisfied strictly.
std::size_t strictBound(const ExponentMatrix& m);
/// Rows of buildH(n) satisfied strictly.
std::size_t strictCount(const ExponentMatrix& m);

/// Rows satisfied exactly by a line, from the closed-form description.
std::vector<std::string> lineExactLabelsClosedForm(const Line& l, std::size_t n);

/// Calls `visit` for every member with entries in [0, bound]; rows are filled in
/// pair order with triangle pruning. Throws BudgetExceeded past `budget`
/// partial assignments.
void enumerateMembers(std::size_t n, long bound, std::uint64_t budget,
                      const std::function<void(const IntVector&)>& visit);

struct MinSupportResult {
  std::size_t minSupport = 0;
  std::uint64_t members = 0;
  std::size_t minimalSupportMembers = 0;
  /// Every member of support n-1 is a positive multiple of a line.
  bool minimalAreLines = true;
  std::optional<IntVector> counterexample;
};

/// Scans the nonzero members with entries at most `bound`.
MinSupportResult minSupportScan(std::size_t n, long bound, std::uint64_t budget = kDefaultBudget);

} // namespace qsm::qmet
