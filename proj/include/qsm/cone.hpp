#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsm/rational.hpp"

namespace qsm {

/// One inequality coeffs . x >= 0 with a unique label.
struct HRow {
  std::string label;
  QVector coeffs;
};

/// The cone {x in Q^dim : coeffs . x >= 0 for every row}.
class HDescription {
public:
  HDescription() = default;
  /// Throws DimensionError on a length mismatch and DomainError on a zero
  /// row or a duplicate label.
  HDescription(std::size_t dim, std::vector<HRow> rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<HRow>& rows() const noexcept { return rows_; }
  const HRow& row(std::size_t i) const { return rows_.at(i); }
  std::vector<std::string> labels() const;

  /// Throws LookupError for an unknown label.
  std::size_t indexOf(const std::string& label) const;
  bool contains(const std::string& label) const { return index_.count(label) != 0; }

private:
  std::size_t dim_ = 0;
  std::vector<HRow> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Primitive nonzero integer direction.
class Ray {
public:
  /// Normalizes `v` to its primitive positive multiple. Throws DomainError on zero.
  explicit Ray(const IntVector& v);
  explicit Ray(const QVector& v);

  const IntVector& direction() const noexcept { return direction_; }
  std::size_t size() const noexcept { return direction_.size(); }
  const Integer& operator[](std::size_t i) const { return direction_[i]; }

  friend bool operator==(const Ray& a, const Ray& b) { return a.direction_ == b.direction_; }
  /// Lexicographic on the direction.
  friend std::strong_ordering operator<=>(const Ray& a, const Ray& b);

private:
  IntVector direction_;
};

/// tight[r][f] is true iff ray r satisfies row f exactly.
struct IncidenceStructure {
  std::vector<Ray> rays;
  std::vector<std::string> rows;
  std::vector<std::vector<bool>> tight;

  std::size_t tightCount(std::size_t ray) const;
  std::vector<std::size_t> raysOnRow(std::size_t row) const;
};

struct DdOptions {
  unsigned jobs = 1;
};

bool isPointed(const HDescription& h);
std::size_t linealityDimension(const HDescription& h);

bool isMember(const HDescription& h, const QVector& x);
bool isMember(const HDescription& h, const IntVector& x);
/// Labels of the rows violated by `x`, in row order.
std::vector<std::string> violatedRows(const HDescription& h, const QVector& x);

/// Extreme rays by the double description method, canonical and sorted.
/// Throws UnsupportedConeError when the cone is not pointed.
std::vector<Ray> ddExtremeRays(const HDescription& h, const DdOptions& options = {});

/// Throws NotAMemberError if some ray violates some row.
IncidenceStructure incidence(const HDescription& h, const std::vector<Ray>& rays);

/// True iff the rays tight on `label` span a hyperplane. `rays` must be the
/// extreme rays of `h`.
bool isFacet(const HDescription& h, const std::string& label, const std::vector<Ray>& rays);
/// isFacet for every row, in row order.
std::vector<bool> facetMask(const HDescription& h, const std::vector<Ray>& rays);

/// Rank of the extreme rays equals the dimension.
bool isFullDimensional(const HDescription& h, const std::vector<Ray>& rays);

/// Sum of the extreme rays. Throws DegenerateConeError when the cone is not
/// full-dimensional.
QVector interiorPoint(const HDescription& h, const std::vector<Ray>& rays);

/// Labels of the rows satisfied with equality, in row order. Throws
/// NotAMemberError when `x` violates a row.
std::vector<std::string> exactSet(const HDescription& h, const QVector& x);
std::vector<std::string> exactSet(const HDescription& h, const IntVector& x);

/// The description whose rows are the given rays; its cone is the dual of
/// the cone generated by `rays`.
HDescription polarDescription(const std::vector<Ray>& rays);

/// Completeness certificate: the rays are members and every facet normal of
/// cone(rays) is a positive multiple of some row of `h`, so cone(rays) equals
/// the cone of `h`.
/// `rays` must span the space.
bool raysGenerateCone(const HDescription& h, const std::vector<Ray>& rays,
                      const DdOptions& options = {});

} // namespace qsm
