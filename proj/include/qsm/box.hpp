#pragma once

#include <cstddef>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qsm/cone.hpp"
#include "qsm/group.hpp"

// Finite truncations of submonoids of N^N: every order, cover and minimality
// statement here is relative to the box [0, bound]^dim.
namespace qsm::box {

/// Points of a box; coordinates are bounded by the box, so fixed width suffices.
using BoxPoint = std::vector<long>;
using Membership = std::function<bool(const BoxPoint&)>;

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

BoxPoint cmax(const BoxPoint& u, const BoxPoint& v);
BoxPoint add(const BoxPoint& u, const BoxPoint& v);
bool leq(const BoxPoint& u, const BoxPoint& v);
BoxPoint ones(std::size_t dim, long k = 1);
std::string toString(const BoxPoint& p);
IntVector toInt(const BoxPoint& p);

/// Members of the box in odometer order (first coordinate varies fastest).
/// Throws BudgetExceeded when the box has more than `budget` points.
/// Enumeration is sharded over `jobs` threads by the leading coordinate.
std::vector<BoxPoint> members(const Membership& member, std::size_t dim, long bound,
                              std::uint64_t budget = kDefaultBudget, unsigned jobs = 1);

/// Membership in the cone of `h` for integer points.
Membership coneMembership(const HDescription& h);
/// Membership in the integer quasi-semimetrics on n points (pair order).
Membership qmetMembership(std::size_t n);
/// The whole box (the orthant N^dim).
Membership orthantMembership();

/// Relations of one point inside the box poset of members.
struct CoverReport {
  BoxPoint point;
  long bound = 0;
  std::vector<BoxPoint> covers;    // members covered by the point
  std::vector<BoxPoint> coveredBy; // members covering the point
};

/// Throws NotAMemberError when `x` is not a member inside the box.
CoverReport coversInBox(const Membership& member, std::size_t dim, const BoxPoint& x, long bound,
                        std::uint64_t budget = kDefaultBudget);
CoverReport coversAmong(const std::vector<BoxPoint>& pool, const BoxPoint& x, long bound);

/// Nonzero members minimal for <= among the box members. Minimality is
/// relative to the box.
std::vector<BoxPoint> dicksonMinimal(const Membership& member, std::size_t dim, long bound,
                                     std::uint64_t budget = kDefaultBudget);
std::vector<BoxPoint> minimalAmong(const std::vector<BoxPoint>& pool);

/// Map on the members of a box, promised to be a bijection that preserves
/// componentwise max.
class BoxOracle {
public:
  BoxOracle(std::size_t dim, long bound, std::map<BoxPoint, BoxPoint> mapping, std::string name = "custom");

  std::size_t dim() const noexcept { return dim_; }
  long bound() const noexcept { return bound_; }
  const std::string& name() const noexcept { return name_; }
  const std::map<BoxPoint, BoxPoint>& mapping() const noexcept { return mapping_; }
  /// Domain points in odometer order.
  const std::vector<BoxPoint>& domain() const noexcept { return domain_; }
  bool isMember(const BoxPoint& p) const { return mapping_.count(p) != 0; }
  /// Throws NotAMemberError outside the domain.
  const BoxPoint& operator()(const BoxPoint& p) const;

  /// Bijection on the domain and max-preservation on every pair whose max
  /// lies in the domain. Throws MalformedOracleError naming the pair.
  void validate() const;

private:
  std::size_t dim_;
  long bound_;
  std::map<BoxPoint, BoxPoint> mapping_;
  std::vector<BoxPoint> domain_;
  std::string name_;
};

/// Oracle acting on the members of a box by a map applied pointwise.
BoxOracle tabulate(const Membership& member, std::size_t dim, long bound,
                   const std::function<BoxPoint(const BoxPoint&)>& map, std::string name);

/// x |-> y with y[pi[i]] = x[i] on the given member set.
BoxOracle coordinatePermutationOracle(const Membership& member, std::size_t dim, long bound,
                                      const std::vector<std::size_t>& pi, std::string name = "permutation");
/// A system automorphism of the quasi-semimetric monoid on n points.
BoxOracle qmetElementOracle(const GroupElement& g, long bound);
BoxOracle qmetIdentityOracle(std::size_t n, long bound);
BoxOracle qmetTransposeOracle(std::size_t n, long bound);
/// The involution of the 2-dimensional cone C_k swapping (k+1,k) and (k,k+1).
BoxOracle ckSwapOracle(long k, long bound);
/// Union of layers {k1 <= v <= (k+1)1}, acting on layer k by layerPerms[k % size].
BoxOracle layeredOracle(std::size_t dim, long bound, const std::vector<std::vector<std::size_t>>& layerPerms);
Membership layeredMembership();

/// Builds a named oracle: "identity", "transpose" (on n points), "ck-swap:k"
/// or "layered:d" (layers alternate between the identity and swapping 1,2).
/// Throws DomainError for an unknown name.
BoxOracle namedOracle(const std::string& name, std::size_t n, long bound);

} // namespace qsm::box
