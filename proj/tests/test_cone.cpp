#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "qsm/cone.hpp"
#include "qsm/errors.hpp"
#include "qsm/qmet.hpp"

using namespace qsm;

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
HDescription orthant(std::size_t d) {
  std::vector<HRow> rows;
  for (std::size_t i = 0; i < d; ++i) {
    QVector c(d, Rational(0));
    c[i] = Rational(1);
    rows.push_back({"x" + std::to_string(i + 1), c});
  }
  return HDescription(d, rows);
}
std::set<oracle::IVec> asSet(const std::vector<Ray>& rays) {
  std::set<oracle::IVec> out;
  for (const auto& r : rays) {
    oracle::IVec v;
    for (const auto& x : r.direction()) v.push_back(x.get_si());
    out.insert(v);
  }
  return out;
}
} // namespace

TEST_CASE("H-description validation") {
  CHECK_THROWS_AS(HDescription(2, {{"a", q({1, 0, 0})}}), DimensionError);
  CHECK_THROWS_AS(HDescription(2, {{"a", q({0, 0})}}), DomainError);
  CHECK_THROWS_AS(HDescription(2, {{"a", q({1, 0})}, {"a", q({0, 1})}}), DomainError);
  auto h = orthant(3);
  CHECK(h.indexOf("x2") == 1);
  CHECK_THROWS_AS(h.indexOf("nope"), LookupError);
  CHECK(h.labels() == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("rays are primitive and ordered") {
  CHECK(Ray(iv({2, 4, 0})).direction() == iv({1, 2, 0}));
  CHECK(Ray(QVector{Rational::parse("1/2"), Rational(1)}).direction() == iv({1, 2}));
  CHECK(Ray(iv({0, 1})) < Ray(iv({1, 0})));
  CHECK_THROWS_AS(Ray(iv({0, 0})), DomainError);
}

TEST_CASE("orthant rays and facets") {
  auto h = orthant(4);
  auto rays = ddExtremeRays(h);
  CHECK(rays.size() == 4);
  auto mask = facetMask(h, rays);
  CHECK(std::all_of(mask.begin(), mask.end(), [](bool b) { return b; }));
  CHECK(isFullDimensional(h, rays));
  CHECK(interiorPoint(h, rays) == q({1, 1, 1, 1}));
}

TEST_CASE("a redundant row is not a facet") {
  HDescription h(2, {{"x", q({1, 0})}, {"y", q({0, 1})}, {"x+y", q({1, 1})}});
  auto rays = ddExtremeRays(h);
  CHECK(rays.size() == 2);
  CHECK(isFacet(h, "x", rays));
  CHECK_FALSE(isFacet(h, "x+y", rays));
}

TEST_CASE("non-pointed cones are rejected") {
  HDescription h(2, {{"x", q({1, 0})}});
  CHECK_FALSE(isPointed(h));
  CHECK(linealityDimension(h) == 1);
  try {
    ddExtremeRays(h);
    FAIL("expected UnsupportedConeError");
  } catch (const UnsupportedConeError& e) {
    CHECK(e.lineality() == 1);
  }
}

TEST_CASE("DD against a small cone with a non-simplicial start") {
  HDescription h(3, {{"t", q({1, 1, -1})}, {"a", q({1, 0, 0})}, {"b", q({0, 1, 0})}, {"c", q({0, 0, 1})}});
  auto rays = ddExtremeRays(h);
  std::vector<Ray> want{Ray(iv({0, 1, 0})), Ray(iv({0, 1, 1})), Ray(iv({1, 0, 0})), Ray(iv({1, 0, 1}))};
  CHECK(rays == want);
  CHECK(raysGenerateCone(h, rays));
  std::vector<Ray> partial(rays.begin(), rays.begin() + 3);
  CHECK_FALSE(raysGenerateCone(h, partial));
}

TEST_CASE("DD on buildH(3) matches the brute-force oracle") {
  auto h = qmet::buildH(3);
  auto rays = ddExtremeRays(h);
  auto brute = oracle::bruteForceRays(oracle::qmetRows(3), 6);
  CHECK(asSet(rays) == brute);
  CHECK(rays.size() == 12);
}

TEST_CASE("threaded DD gives the same rays") {
  auto h = qmet::buildH(4);
  CHECK(ddExtremeRays(h, DdOptions{4}) == ddExtremeRays(h));
}

TEST_CASE("incidence and exact sets") {
  auto h = orthant(2);
  auto rays = ddExtremeRays(h);
  auto inc = incidence(h, rays);
  CHECK(inc.tightCount(0) == 1);
  CHECK(inc.raysOnRow(0) == std::vector<std::size_t>{0});
  CHECK(exactSet(h, iv({0, 3})) == std::vector<std::string>{"x1"});
  CHECK_THROWS_AS(exactSet(h, iv({-1, 3})), NotAMemberError);
  CHECK_THROWS_AS(incidence(h, {Ray(iv({1, -1}))}), NotAMemberError);
  CHECK(violatedRows(h, q({-1, -1})) == std::vector<std::string>{"x1", "x2"});
  CHECK(isMember(h, q({0, 0})));
}

TEST_CASE("degenerate cones have no interior point") {
  HDescription h(2, {{"x", q({1, 0})}, {"y", q({0, 1})}, {"-y", q({0, -1})}});
  auto rays = ddExtremeRays(h);
  CHECK_FALSE(isFullDimensional(h, rays));
  CHECK_THROWS_AS(interiorPoint(h, rays), DegenerateConeError);
}

TEST_CASE("polar description") {
  auto p = polarDescription({Ray(iv({1, 0})), Ray(iv({1, 1}))});
  CHECK(p.size() == 2);
  CHECK(p.row(1).label == "ray1");
  CHECK_THROWS_AS(polarDescription({}), DomainError);
}
