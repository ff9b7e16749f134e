#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qsm/errors.hpp"
#include "qsm/graph_aut.hpp"
#include "qsm/group.hpp"
#include "qsm/qmet.hpp"
#include "qsm/symmetry.hpp"

using namespace qsm;
using namespace qsm::symmetry;

namespace {
ColoredGraph cycle(std::size_t n) {
  ColoredGraph g(std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  return g;
}
ColoredGraph petersen() {
  ColoredGraph g(std::vector<int>(10, 0));
  for (std::size_t i = 0; i < 5; ++i) {
    g.addEdge(i, (i + 1) % 5);
    g.addEdge(i, i + 5);
    g.addEdge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}
Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}
} // namespace

TEST_CASE("group elements") {
  auto all = GroupElement::all(3);
  CHECK(all.size() == 12);
  CHECK(all.front() == GroupElement::identity(3));
  CHECK(std::set<GroupElement>(all.begin(), all.end()).size() == 12);
  for (const auto& g : all) {
    CHECK(g * g.inverse() == GroupElement::identity(3));
    for (const auto& h : all) CHECK(std::find(all.begin(), all.end(), g * h) != all.end());
  }
  CHECK_THROWS_AS(GroupElement({0, 0, 1}, false), DomainError);
  CHECK(GroupElement::identity(3).toString() == "()");
  CHECK(GroupElement({1, 2, 0}, true).toString() == "(1 2 3) tau");
  CHECK(cycleString({1, 0, 3, 2}) == "(1 2)(3 4)");
}

TEST_CASE("action on matrices") {
  GroupElement swap({1, 0, 2}, false);
  auto cut = qmet::orientedCut({0}, 3);
  CHECK(applyElement(swap, cut) == qmet::orientedCut({1}, 3));
  GroupElement tau({0, 1, 2}, true);
  CHECK(applyElement(tau, cut) == cut.transposed());
  // The action is a homomorphism.
  for (const auto& g : GroupElement::all(3))
    for (const auto& h : GroupElement::all(3)) CHECK(applyElement(g * h, cut) == applyElement(g, applyElement(h, cut)));
}

TEST_CASE("induced facet permutations") {
  GroupElement tau({0, 1, 2}, true);
  auto fp = inducedFacetPermutation(tau, 3);
  CHECK(fp.imageOf("N:1,2") == "N:2,1");
  CHECK(fp.imageOf("T:1,2,3") == "T:3,2,1");
  GroupElement rot({1, 2, 0}, false);
  CHECK(inducedFacetPermutation(rot, 3).imageOf("T:1,2,3") == "T:2,3,1");
}

TEST_CASE("graph automorphisms of small graphs") {
  CHECK(automorphismGroup(cycle(5), 100000).order == 10);
  CHECK(automorphismGroup(cycle(6), 100000).order == 12);
  auto p = automorphismGroup(petersen(), 1000000);
  CHECK(p.order == 120);
  auto g = petersen();
  g.finalize();
  for (const auto& a : p.elements) CHECK(g.isAutomorphism(a));
  CHECK(generateGroup(p.generators, 10).size() == 120);
  // Vertex colors restrict the group.
  ColoredGraph colored({1, 0, 0, 0});
  for (std::size_t i = 0; i < 4; ++i) colored.addEdge(i, (i + 1) % 4);
  CHECK(automorphismGroup(colored, 1000).order == 2);
  // Edge colors too.
  ColoredGraph ec(std::vector<int>(4, 0));
  ec.addEdge(0, 1, 1);
  ec.addEdge(1, 2, 0);
  ec.addEdge(2, 3, 0);
  ec.addEdge(3, 0, 0);
  CHECK(automorphismGroup(ec, 1000).order == 2);
  CHECK_THROWS_AS(automorphismGroup(petersen(), 3), BudgetExceeded);
}

TEST_CASE("incidence group of the cone") {
  for (std::size_t n : {3u, 4u}) {
    auto h = qmet::buildH(n);
    auto inc = incidence(h, ddExtremeRays(h));
    auto aut = autGroupIncidence(inc);
    CHECK(aut.order == 2 * factorial(n));
    auto actions = rowActions(aut, inc);
    // Every row action is induced by a system element.
    std::set<Permutation> induced;
    for (const auto& g : GroupElement::all(n)) induced.insert(inducedFacetPermutation(g, n).image);
    for (const auto& a : actions) CHECK(induced.count(a) == 1);
  }
}

TEST_CASE("line fingerprints") {
  for (std::size_t n = 3; n <= 6; ++n) {
    auto fp = lineFingerprint(n);
    CHECK(fp.matchesClosedForms);
    CHECK(fp.sameKind == (n - 1) * (n - 1) * (n - 2));
    CHECK(fp.crossKind == (n - 1) * (n - 1) * (n - 2) + 1);
    CHECK(fp.paired == n * (n - 1) * (n - 2));
    CHECK(fp.perLine == (n - 1) * (n - 1) * (n - 1));
  }
}

TEST_CASE("line method") {
  for (std::size_t n = 3; n <= 6; ++n) {
    auto cert = autGroupViaLines(n);
    CHECK(cert.order == 2 * factorial(n));
    CHECK(allPassed(cert.checks));
    CHECK_FALSE(cert.lineInvarianceVerified);
  }
  auto h = qmet::buildH(4);
  auto cert = autGroupViaLines(4, ddExtremeRays(h));
  CHECK(cert.lineInvarianceVerified);
  CHECK(allPassed(cert.checks));
}

TEST_CASE("group diagram") {
  for (std::size_t n : {3u, 4u}) {
    auto rays = ddExtremeRays(qmet::buildH(n));
    auto rep = verifyGroupDiagram(n, rays);
    CHECK(allPassed(rep.checks));
    CHECK(rep.elements == 2 * factorial(n));
    CHECK(rep.distinctFacetPermutations == rep.elements);
  }
}
