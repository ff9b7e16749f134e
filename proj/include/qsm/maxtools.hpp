#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsm/box.hpp"
#include "qsm/check.hpp"
#include "qsm/cone.hpp"

namespace qsm::maxtools {

using box::BoxOracle;
using box::BoxPoint;
using box::Membership;

/// Componentwise maximum. Throws DimensionError on a length mismatch.
QVector cmax(const QVector& u, const QVector& v);
IntVector cmax(const IntVector& u, const IntVector& v);

/// Witness that a row with two negative coefficients breaks max-closure:
/// plus = u + eps z and minus = u - eps z lie on a.x = 0, their max does not.
struct ViolationWitness {
  QVector a;
  QVector u;
  QVector z;
  Rational epsilon;
  QVector plus;
  QVector minus;
  QVector max;
  Rational value;    // a . max
  Rational expected; // -2 eps a_r a_s
  std::size_t r = 0;
  std::size_t s = 0;
  bool verified = false;
};

/// z is signed: z_r = -a_s, z_s = a_r for the first two negative positions
/// r < s. Throws InapplicableError with fewer than two negatives, DomainError
/// when a.u != 0 or eps <= 0, DimensionError on a length mismatch.
ViolationWitness maxViolationWitness(const QVector& a, const QVector& u, const Rational& epsilon = Rational(1));

/// Same construction for the facet row `label` of a pointed cone: u is the sum
/// of the extreme rays on that facet and eps (at most 1) keeps u +- eps z in
/// the cone, so the witness pair consists of cone members.
ViolationWitness maxViolationWitness(const HDescription& h, const std::vector<Ray>& rays, const std::string& label);

struct MaxClosedResult {
  bool maxClosed = true;
  std::optional<std::string> violatingRow;  // first facet row with two negatives
  std::optional<ViolationWitness> witness;  // verified witness for that row
  std::vector<std::string> redundantRows;   // rows dropped before the test
};

/// Decides max-closedness from the facet rows. Throws UnsupportedConeError
/// for a non-pointed cone.
MaxClosedResult isMaxClosed(const HDescription& h, const std::vector<Ray>& rays);
/// Same test with the facet rows given as a mask (for instance certified by
/// interior witnesses); no violation witness is built.
MaxClosedResult isMaxClosed(const HDescription& h, const std::vector<bool>& facets);

struct VeryFullResult {
  bool veryFull = true;
  std::optional<std::string> violatingRow; // first facet row with a.1 < max|a_i|
  std::vector<std::string> redundantRows;
  bool membersAgree = true;                // 1 +- e_i membership matches the verdict
};

VeryFullResult isVeryFull(const HDescription& h, const std::vector<Ray>& rays);
VeryFullResult isVeryFull(const HDescription& h, const std::vector<bool>& facets);

/// {-k x + (k+1) y >= 0, (k+1) x - k y >= 0}. Throws DomainError for k < 1.
HDescription ckCone(long k);

struct CkReport {
  long k = 0;
  long bound = 0;
  std::size_t members = 0;
  BoxPoint p;
  BoxPoint q;
  box::CoverReport pCovers;
  box::CoverReport qCovers;
  std::vector<Check> checks;
  bool passed() const { return allPassed(checks); }
};

/// Throws DomainError for k < 1 or bound < 2(k+1).
CkReport ckVerify(long k, long bound, std::uint64_t budget = box::kDefaultBudget);

struct PsiReport {
  std::vector<Ray> rays;
  std::vector<std::vector<long>> psi;
  IntVector psiOfMax;  // psi(v1 max v3)
  IntVector maxOfPsi;  // psi(v1) max psi(v3)
  std::vector<Check> checks;
  bool passed() const { return allPassed(checks); }
};

HDescription psiCone();
PsiReport psiExampleVerify();

/// For every j: (sum_{i != j} x_i)^q >= x_j^p with alpha = p/q. Throws
/// DomainError for alpha outside (0,1), a negative entry or dim < 3.
bool alphaMonoidMember(const IntVector& x, const Rational& alpha);
Membership alphaMembership(const Rational& alpha);

struct RecoveryOptions {
  bool transitiveSymmetry = false; // try the Dickson route first
  bool validateOracle = true;
  std::uint64_t budget = box::kDefaultBudget;
};

struct Recovery {
  enum class Outcome { Permutational, NotPermutational, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  std::optional<std::vector<std::size_t>> pi; // phi(v)[pi[i]] = v[i]
  std::optional<BoxPoint> witness;
  std::string witnessReason;
  std::optional<long> fixedMultiple;          // k with phi(k1) = k1 found first
  std::string fixedRoute;                     // "dickson" or "scan"
  std::vector<long> fixedMultiples;           // all k with phi(k1) = k1 certified
  std::vector<Check> hypotheses;              // very full, closed under + and max
  std::vector<Check> steps;                   // claim checks along the way
  std::vector<std::string> notes;
  long bound = 0;
};

std::string outcomeName(Recovery::Outcome o);

/// Recovers the coordinate permutation of a max-automorphism given on a box
/// truncation. Hypotheses are checked and reported, never assumed. Throws
/// MalformedOracleError (from BoxOracle::validate) and DomainError for bound < 3.
Recovery recoverPermutation(const BoxOracle& oracle, const RecoveryOptions& options = {});

} // namespace qsm::maxtools
