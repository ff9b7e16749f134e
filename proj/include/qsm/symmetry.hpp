#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsm/check.hpp"
#include "qsm/cone.hpp"
#include "qsm/graph_aut.hpp"
#include "qsm/group.hpp"
#include "qsm/qmet.hpp"

namespace qsm::symmetry {

qmet::ExponentMatrix applyElement(const GroupElement& g, const qmet::ExponentMatrix& m);
qmet::RawMatrix applyElement(const GroupElement& g, const qmet::RawMatrix& m);
/// Action on coordinate vectors in pair order.
IntVector applyElement(const GroupElement& g, const IntVector& x);
/// image[k] is the coordinate that coordinate k moves to.
std::vector<std::size_t> coordinateImage(const GroupElement& g);

/// Action on the rows of buildH(n): image[f] is the row index of g(f).
struct FacetPermutation {
  std::vector<std::size_t> image;
  std::vector<std::string> labels;

  std::string imageOf(const std::string& label) const;
  friend bool operator==(const FacetPermutation& a, const FacetPermutation& b) {
    return a.image == b.image;
  }
};

FacetPermutation inducedFacetPermutation(const GroupElement& g, std::size_t n);

/// Number of facets of the cone containing both lines, indexed in allLines(n) order.
struct LineFingerprint {
  std::size_t n = 0;
  std::vector<qmet::Line> lines;
  std::vector<std::vector<std::size_t>> counts; // diagonal: facets containing the line
  std::size_t sameKind = 0;                       // (n-1)^2 (n-2)
  std::size_t crossKind = 0;                      // (n-1)^2 (n-2) + 1
  std::size_t paired = 0;                         // n (n-1) (n-2)
  std::size_t perLine = 0;                        // (n-1)^3
  bool matchesClosedForms = false;
};

/// Counts by evaluating every row on the line matrices and compares with the
/// closed forms.
LineFingerprint lineFingerprint(std::size_t n);

/// The bipartite ray/row graph; rays get color 0, rows color 1.
ColoredGraph incidenceGraph(const IncidenceStructure& inc);

struct IncidenceAutResult {
  Integer order;
  std::vector<Permutation> generators; // on vertices: rays first, then rows
  std::vector<Permutation> elements;
  std::uint64_t nodes = 0;
};

IncidenceAutResult autGroupIncidence(const IncidenceStructure& inc, std::uint64_t budget = qmet::kDefaultBudget);

/// Restriction of each automorphism to the row vertices.
std::vector<Permutation> rowActions(const IncidenceAutResult& aut, const IncidenceStructure& inc);

struct LinesCertificate {
  std::size_t n = 0;
  Integer order;
  std::vector<GroupElement> elements;
  LineFingerprint fingerprint;
  /// e(F) for every row, as indices into allLines(n).
  std::vector<std::vector<std::size_t>> rowLines;
  std::vector<Check> checks;
  /// The order equals the group of the cone provided the lines form an
  /// invariant set under every combinatorial automorphism; states whether
  /// that premise was checked on the extreme rays.
  std::string condition;
  bool lineInvarianceVerified = false;
};

/// Symmetry group through the line family, without ray enumeration. When
/// `rays` holds the extreme rays of buildH(n) the line-invariance premise is
/// also checked on them.
LinesCertificate autGroupViaLines(std::size_t n, const std::optional<std::vector<Ray>>& rays = std::nullopt);

struct GroupDiagramReport {
  std::size_t n = 0;
  std::size_t elements = 0;
  std::size_t distinctFacetPermutations = 0;
  std::vector<Check> checks;
};

/// Every element is a coordinate permutation (an isometry with integer
/// matrix), permutes `rays`, is compatible with its facet action, and
/// distinct elements act differently on the facets.
GroupDiagramReport verifyGroupDiagram(std::size_t n, const std::vector<Ray>& rays);

} // namespace qsm::symmetry
