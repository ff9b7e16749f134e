#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace qsm {

/// Element of S_n x Z_2 acting on off-diagonal matrices: the entry at (i,j)
/// moves to (perm[i], perm[j]), then to its transpose position if `transpose`.
class GroupElement {
public:
  /// Throws DomainError when `perm` is not a permutation of 0..n-1.
  GroupElement(std::vector<std::size_t> perm, bool transpose);
  static GroupElement identity(std::size_t n);
  /// All 2 n! elements: permutations in lexicographic order, untransposed first.
  static std::vector<GroupElement> all(std::size_t n);

  std::size_t n() const noexcept { return perm_.size(); }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  bool transpose() const noexcept { return transpose_; }
  std::size_t operator()(std::size_t i) const { return perm_.at(i); }

  /// (g * h) acts as g after h.
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
  GroupElement inverse() const;

  /// Cycle notation on 1-based points, e.g. "(1 2 3)" or "()" for the identity,
  /// followed by " tau" when the transpose flag is set.
  std::string toString() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

private:
  std::vector<std::size_t> perm_;
  bool transpose_ = false;
};

/// Cycle notation of a 0-based permutation, printed 1-based.
std::string cycleString(const std::vector<std::size_t>& perm);

} // namespace qsm
