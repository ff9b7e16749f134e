#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "qsm/errors.hpp"
#include "qsm/maxtools.hpp"
#include "qsm/qmet.hpp"
#include "qsm/symmetry.hpp"

using namespace qsm;
using namespace qsm::maxtools;
using box::BoxPoint;

namespace {
QVector q(std::initializer_list<long> v) {
  QVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}
IntVector iv(std::initializer_list<long> v) {
  IntVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}
std::vector<BoxPoint> sorted(std::vector<BoxPoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}
HDescription twoNegatives() {
  return HDescription(3, {{"x3-x1-x2", q({-1, -1, 1})}, {"x1", q({1, 0, 0})}, {"x2", q({0, 1, 0})}});
}
} // namespace

TEST_CASE("cmax") {
  auto x = iv({1, 5, 2});
  CHECK(cmax(x, x) == x);
  CHECK(cmax(iv({1, 0}), iv({0, 2})) == iv({1, 2}));
  CHECK_THROWS_AS(cmax(iv({1}), iv({1, 2})), DimensionError);
  auto r = qmet::line(qmet::LineKind::R, 0, 3).toVector();
  auto c = qmet::line(qmet::LineKind::C, 0, 3).toVector();
  auto m = qmet::ExponentMatrix::fromVector(3, cmax(r, c));
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(0, 2) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(2, 0) == 1);
  CHECK(m.at(1, 2) == 0);
  CHECK(m.at(2, 1) == 0);
  // The max over all six cuts is the all-ones matrix.
  IntVector all(6, Integer(0));
  for (const auto& subset : std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}})
    all = cmax(all, qmet::orientedCut(subset, 3).toVector());
  CHECK(all == IntVector(6, Integer(1)));
}

TEST_CASE("max-closedness") {
  for (std::size_t n = 3; n <= 4; ++n) {
    auto h = qmet::buildH(n);
    auto res = isMaxClosed(h, ddExtremeRays(h));
    CHECK(res.maxClosed);
    CHECK(res.redundantRows.empty());
  }
  for (std::size_t n = 5; n <= 6; ++n) CHECK(isMaxClosed(qmet::buildH(n), qmet::certifiedFacets(n)).maxClosed);
  for (long k = 1; k <= 5; ++k) {
    auto h = ckCone(k);
    CHECK(isMaxClosed(h, ddExtremeRays(h)).maxClosed);
  }
  auto bad = twoNegatives();
  auto res = isMaxClosed(bad, ddExtremeRays(bad));
  CHECK_FALSE(res.maxClosed);
  REQUIRE(res.violatingRow);
  CHECK(*res.violatingRow == "x3-x1-x2");
  REQUIRE(res.witness);
  CHECK(res.witness->verified);
  CHECK(isMember(bad, res.witness->plus));
  CHECK(isMember(bad, res.witness->minus));
  CHECK_FALSE(isMember(bad, res.witness->max));
  HDescription line(2, {{"x", q({1, 0})}});
  CHECK_THROWS_AS(isMaxClosed(line, std::vector<Ray>{}), UnsupportedConeError);
}

TEST_CASE("a redundant row with two negatives does not break max-closedness") {
  // x - y - z >= 0 is implied by the others here but has two negatives.
  HDescription h(3, {{"x>=2y+2z", q({1, -2, -2})}, {"y", q({0, 1, 0})}, {"z", q({0, 0, 1})}, {"x-y-z", q({1, -1, -1})}});
  auto rays = ddExtremeRays(h);
  CHECK_FALSE(isFacet(h, "x-y-z", rays));
  auto res = isMaxClosed(h, rays);
  CHECK_FALSE(res.maxClosed);
  CHECK(*res.violatingRow == "x>=2y+2z");
  HDescription g(2, {{"x", q({1, 0})}, {"y", q({0, 1})}, {"2x+2y-x-y", q({3, -1})}, {"x+y", q({1, 1})}});
  auto gr = ddExtremeRays(g);
  auto gres = isMaxClosed(g, gr);
  CHECK(gres.maxClosed);
}

TEST_CASE("max violation witness") {
  auto w = maxViolationWitness(q({-1, -1, 1}), q({1, 1, 2}));
  CHECK(w.z == q({1, -1, 0}));
  CHECK(w.max == q({2, 2, 2}));
  CHECK(w.value == Rational(-2));
  CHECK(w.verified);
  auto w2 = maxViolationWitness(q({-2, -3, 6}), q({3, 0, 1}));
  CHECK(w2.value == Rational(-12));
  CHECK(w2.expected == Rational(-12));
  CHECK(w2.verified);
  auto w3 = maxViolationWitness(q({-1, -1, 1}), q({1, 1, 2}), Rational::parse("1/2"));
  CHECK(w3.value == Rational(-1));
  CHECK_THROWS_AS(maxViolationWitness(q({-1, 1, 1}), q({1, 1, 0})), InapplicableError);
  CHECK_THROWS_AS(maxViolationWitness(q({-1, -1, 1}), q({1, 1, 1})), DomainError);
  CHECK_THROWS_AS(maxViolationWitness(q({-1, -1, 1}), q({1, 1, 2}), Rational(0)), DomainError);
}

TEST_CASE("very full") {
  for (std::size_t n = 3; n <= 4; ++n) {
    auto h = qmet::buildH(n);
    auto res = isVeryFull(h, ddExtremeRays(h));
    CHECK(res.veryFull);
    CHECK(res.membersAgree);
  }
  for (std::size_t n = 5; n <= 6; ++n) CHECK(isVeryFull(qmet::buildH(n), qmet::certifiedFacets(n)).veryFull);
  for (long k = 1; k <= 5; ++k) {
    auto h = ckCone(k);
    auto res = isVeryFull(h, ddExtremeRays(h));
    CHECK_FALSE(res.veryFull);
    CHECK(res.membersAgree);
  }
  HDescription orthant(3, {{"a", q({1, 0, 0})}, {"b", q({0, 1, 0})}, {"c", q({0, 0, 1})}});
  CHECK(isVeryFull(orthant, ddExtremeRays(orthant)).veryFull);
  auto psi = psiCone();
  CHECK(isVeryFull(psi, ddExtremeRays(psi)).veryFull);
}

TEST_CASE("C_k cones") {
  CHECK_THROWS_AS(ckCone(0), DomainError);
  CHECK_THROWS_AS(ckVerify(1, 3), DomainError);
  auto h = ckCone(1);
  auto member = box::coneMembership(h);
  for (const auto& p : std::vector<BoxPoint>{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}) CHECK(member(p));
  CHECK_FALSE(member(BoxPoint{1, 0}));
  auto c = box::coversInBox(member, 2, {2, 1}, 4);
  CHECK(c.covers == std::vector<BoxPoint>{{1, 1}});
  CHECK(c.coveredBy == std::vector<BoxPoint>{{2, 2}});
  for (long k = 1; k <= 3; ++k) {
    auto rep = ckVerify(k, 4 * (k + 1));
    CHECK(rep.passed());
    CHECK(rep.pCovers.covers == std::vector<BoxPoint>{{k, k}});
    CHECK(rep.qCovers.coveredBy == std::vector<BoxPoint>{{k + 1, k + 1}});
  }
  // k = 2: the swap moves p = (3,2) but fixes 2p = (6,4).
  auto o = box::ckSwapOracle(2, 12);
  CHECK(o(BoxPoint{3, 2}) == BoxPoint{2, 3});
  CHECK(o(BoxPoint{6, 4}) == BoxPoint{6, 4});
}

TEST_CASE("covers in a box") {
  auto c = box::coversInBox(box::orthantMembership(), 2, {1, 1}, 3);
  CHECK(sorted(c.coveredBy) == sorted({{2, 1}, {1, 2}}));
  CHECK(sorted(c.covers) == sorted({{0, 1}, {1, 0}}));
  auto e3 = box::coversInBox(box::qmetMembership(3), 6, BoxPoint(6, 1), 2);
  std::vector<BoxPoint> want;
  for (std::size_t i = 0; i < 6; ++i) {
    BoxPoint p(6, 1);
    p[i] = 2;
    want.push_back(p);
  }
  CHECK(sorted(e3.coveredBy) == sorted(want));
  CHECK_THROWS_AS(box::coversInBox(box::qmetMembership(3), 6, {0, 1, 0, 0, 0, 0}, 2), NotAMemberError);
  CHECK_THROWS_AS(box::coversInBox(box::orthantMembership(), 2, {4, 0}, 3), NotAMemberError);
}

TEST_CASE("Dickson minimal elements") {
  auto mins = box::dicksonMinimal(box::qmetMembership(3), 6, 1);
  std::vector<BoxPoint> brute;
  for (const auto& v : oracle::binaryMinimalE3()) brute.emplace_back(v.begin(), v.end());
  CHECK(sorted(mins) == sorted(brute));
  std::vector<BoxPoint> cuts;
  for (const auto& s : std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
    BoxPoint p;
    for (const auto& x : qmet::orientedCut(s, 3).toVector()) p.push_back(x.get_si());
    cuts.push_back(p);
  }
  CHECK(sorted(mins) == sorted(cuts));
  BoxPoint sum(6, 0);
  for (const auto& m : mins) sum = box::cmax(sum, m);
  CHECK(sum == BoxPoint(6, 1));
  CHECK(sorted(box::dicksonMinimal(box::orthantMembership(), 2, 3)) == sorted({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(box::dicksonMinimal(box::orthantMembership(), 10, 9, 1000), BudgetExceeded);
}

TEST_CASE("recovery on the quasi-semimetric truncation") {
  auto id = recoverPermutation(box::qmetIdentityOracle(3, 3));
  CHECK(id.outcome == Recovery::Outcome::Permutational);
  std::vector<std::size_t> ident(6);
  std::iota(ident.begin(), ident.end(), std::size_t{0});
  CHECK(id.pi == ident);
  CHECK(allPassed(id.hypotheses));
  CHECK(allPassed(id.steps));

  auto tau = recoverPermutation(box::qmetTransposeOracle(3, 3));
  REQUIRE(tau.pi);
  qmet::PairIndex idx(3);
  for (std::size_t k = 0; k < 6; ++k) {
    auto [i, j] = idx.pair(k);
    CHECK((*tau.pi)[k] == idx.index(j, i));
  }

  RecoveryOptions dickson;
  dickson.transitiveSymmetry = true;
  auto viaD = recoverPermutation(box::qmetTransposeOracle(3, 3), dickson);
  CHECK(viaD.fixedRoute == "dickson");
  CHECK(viaD.pi == tau.pi);
}

TEST_CASE("recovery rejects the C_1 swap") {
  auto rec = recoverPermutation(box::ckSwapOracle(1, 6));
  CHECK(rec.outcome == Recovery::Outcome::NotPermutational);
  REQUIRE(rec.witness);
  CHECK(*rec.witness == BoxPoint{2, 1});
  CHECK_FALSE(rec.hypotheses[0].passed);
}

TEST_CASE("recovery on the layered set") {
  std::vector<std::size_t> id{0, 1, 2}, sw{1, 0, 2};
  auto o = box::layeredOracle(3, 3, {id, sw});
  CHECK_NOTHROW(o.validate());
  auto rec = recoverPermutation(o);
  CHECK(rec.outcome == Recovery::Outcome::NotPermutational);
  REQUIRE(rec.witness);
  CHECK(*rec.witness == BoxPoint{2, 1, 1});
  CHECK(rec.hypotheses[0].passed);   // very full
  CHECK_FALSE(rec.hypotheses[1].passed); // not closed under +
  bool flagged = std::any_of(rec.notes.begin(), rec.notes.end(),
                             [](const std::string& s) { return s.find("not a valid domain") != std::string::npos; });
  CHECK(flagged);
}

TEST_CASE("malformed oracles are reported with the pair") {
  std::map<BoxPoint, BoxPoint> m;
  for (const auto& p : box::members(box::orthantMembership(), 2, 3)) m[p] = p;
  // Swap two incomparable points whose max is fixed: bijective, not max-preserving.
  std::swap(m[{1, 0}], m[{0, 2}]);
  box::BoxOracle bad(2, 3, m, "bad");
  try {
    recoverPermutation(bad);
    FAIL("expected MalformedOracleError");
  } catch (const MalformedOracleError& e) {
    CHECK(std::string(e.what()).find("max not preserved") != std::string::npos);
  }
  std::map<BoxPoint, BoxPoint> notInjective{{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}};
  CHECK_THROWS_AS(box::BoxOracle(2, 3, notInjective).validate(), MalformedOracleError);
  CHECK_THROWS_AS(recoverPermutation(box::qmetIdentityOracle(3, 2)), DomainError);
}

TEST_CASE("psi example") {
  auto rep = psiExampleVerify();
  CHECK(rep.passed());
  CHECK(rep.psiOfMax == iv({0, 1, 0}));
  CHECK(rep.maxOfPsi == iv({1, 1, 0}));
  // psi applied to v3 = (1,0,1) gives v2.
  IntVector v3 = iv({1, 0, 1}), out(3, Integer(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += rep.psi[i][j] * v3[j];
  CHECK(out == iv({0, 1, 0}));
}

TEST_CASE("alpha monoid") {
  auto half = Rational::parse("1/2");
  CHECK(alphaMonoidMember(iv({1, 1, 0, 0}), half));
  CHECK(alphaMonoidMember(iv({0, 1, 0, 1}), half));
  CHECK_FALSE(alphaMonoidMember(iv({1, 0, 0}), half));
  CHECK(alphaMonoidMember(iv({1, 1, 1}), half));
  CHECK(alphaMonoidMember(iv({0, 0, 0}), half));
  CHECK_FALSE(alphaMonoidMember(iv({0, 1, 5}), half)); // 1^2 < 5
  CHECK(alphaMonoidMember(iv({0, 2, 4}), half));       // 2^2 >= 4
  CHECK_THROWS_AS(alphaMonoidMember(iv({1, 1, 0}), Rational(1)), DomainError);
  CHECK_THROWS_AS(alphaMonoidMember(iv({1, 1, 0}), Rational(0)), DomainError);
  CHECK_THROWS_AS(alphaMonoidMember(iv({1, 1}), half), DomainError);
  CHECK_THROWS_AS(alphaMonoidMember(iv({-1, 1, 1}), half), DomainError);
  // Minimal elements are the vectors with two ones, their max-sum is 1.
  auto mins = box::dicksonMinimal(alphaMembership(half), 3, 3);
  CHECK(sorted(mins) == sorted({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("recovery on the alpha monoid through the minimal elements") {
  auto half = Rational::parse("1/2");
  std::vector<std::size_t> pi{2, 0, 1};
  auto o = box::coordinatePermutationOracle(alphaMembership(half), 3, 4, pi);
  RecoveryOptions opt;
  opt.transitiveSymmetry = true;
  auto rec = recoverPermutation(o, opt);
  CHECK(rec.outcome == Recovery::Outcome::Permutational);
  CHECK(rec.fixedRoute == "dickson");
  CHECK(rec.pi == pi);
}
