#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsm/cli.hpp"
#include "qsm/errors.hpp"
#include "qsm/io.hpp"
#include "qsm/maxtools.hpp"

using namespace qsm;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QSM_DATA_DIR) + "/" + name; }

std::string tempFile(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("qsm_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("cone JSON round trip") {
  auto h = qmet::buildH(3);
  auto j = io::coneToJson(h);
  auto back = io::coneFromJson(io::parse(j.dump()));
  REQUIRE(back.size() == h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(back.row(i).label == h.row(i).label);
    CHECK(back.row(i).coeffs == h.row(i).coeffs);
  }
  HDescription frac(2, {{"a", {Rational::parse("1/2"), Rational(-3)}}, {"b", {Rational(0), Rational(1)}}});
  CHECK(io::coneToJson(frac)["rows"][0]["coeffs"][0] == "1/2");
  CHECK(io::coneFromJson(io::coneToJson(frac)).row(0).coeffs == frac.row(0).coeffs);
}

TEST_CASE("ray, matrix and oracle JSON round trips") {
  auto rays = ddExtremeRays(qmet::buildH(3));
  CHECK(io::raysFromJson(io::parse(io::raysToJson(6, rays).dump())) == rays);
  auto m = qmet::hWitness(4, 0, 1, 2);
  CHECK(io::matrixFromJson(io::matrixToJson(m)).toVector() == m.raw().toVector());
  auto o = box::ckSwapOracle(1, 6);
  auto back = io::oracleFromJson(io::parse(io::oracleToJson(o).dump()));
  CHECK(back.mapping() == o.mapping());
  CHECK(back.bound() == 6);
}

TEST_CASE("malformed JSON inputs") {
  CHECK_THROWS_AS(io::parse("{"), ParseError);
  CHECK_THROWS_AS(io::coneFromJson(io::parse(R"({"rows": []})")), ParseError);
  CHECK_THROWS_AS(io::coneFromJson(io::parse(R"({"dim": 2, "rows": [{"label": "a", "coeffs": [1]}]})")), DimensionError);
  CHECK_THROWS_AS(io::coneFromJson(io::parse(R"({"dim": 1, "rows": [{"label": "a", "coeffs": [1.5]}]})")), ParseError);
  CHECK_THROWS_AS(io::matrixFromJson(io::parse(R"({"n": 3, "entries": [[0]]})")), ParseError);
  CHECK_THROWS_AS(io::matrixFromJson(io::parse(R"({"n": 2, "entries": [[1, 0], [0, 0]]})")), ShapeError);
  CHECK_THROWS_AS(io::oracleFromJson(io::parse(R"({"dim": 1, "bound": 2, "pairs": [[[0], [0]], [[0], [1]]]})")),
                  ParseError);
  CHECK_THROWS_AS(io::readFile("/nonexistent/file.json"), ParseError);
}

TEST_CASE("facets and rays commands") {
  auto r = run({"facets", "-n", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "rows: 12"));
  CHECK(contains(r.out, "facets: 12"));
  CHECK(contains(r.out, "n^2(n-1)/2"));
  auto j = run({"--format", "json", "facets", "-n", "4"});
  CHECK(j.code == 0);
  CHECK(io::parse(j.out)["facets"] == 36);
  auto rays = run({"rays", "-n", "3", "--format", "json"});
  CHECK(io::raysFromJson(io::parse(rays.out)).size() == 12);
  CHECK(run({"incidence", "-n", "3"}).code == 0);
}

TEST_CASE("autgroup command") {
  auto r = run({"autgroup", "-n", "3", "--method", "incidence"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "order: 12"));
  CHECK(contains(r.out, "generator: "));
  auto l = run({"autgroup", "-n", "5", "--method", "lines", "--format", "json"});
  CHECK(l.code == 0);
  CHECK(io::parse(l.out)["order"] == "240");
  CHECK(run({"autgroup", "-n", "3", "--method", "bogus"}).code == 2);
}

TEST_CASE("member and exactset commands") {
  auto r = run({"member", data("h123_n6.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "member: true; exact rows: N:1,2 N:1,3 N:2,3 T:1,2,3\n");
  auto bad = run({"member", data("not_member.json")});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "T:1,3,2"));
  CHECK(run({"member", data("rational_member.json")}).code == 0);
  auto e = run({"exactset", data("h123_n6.json")});
  CHECK(e.code == 0);
  CHECK(contains(e.out, "T:1,2,3"));
  CHECK(run({"member", "/nonexistent.json"}).code == 2);
}

TEST_CASE("maxclosed and veryfull commands") {
  auto path = tempFile("h4.json", io::coneToJson(qmet::buildH(4)).dump());
  auto r = run({"maxclosed", path});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "max-closed: true"));
  CHECK(run({"veryfull", path}).code == 0);
  auto bad = run({"maxclosed", data("two_negatives.json")});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "max-closed: false"));
  CHECK(contains(bad.out, "violating row: x3-x1-x2"));
  CHECK(contains(bad.out, "(verified)"));
  auto ckPath = tempFile("c2.json", io::coneToJson(maxtools::ckCone(2)).dump());
  CHECK(run({"veryfull", ckPath}).code == 1);
}

TEST_CASE("ck, recovery, psi and report commands") {
  CHECK(run({"ck", "-k", "1"}).code == 0);
  auto ck = run({"ck", "-k", "2", "--verify", "--bound", "12"});
  CHECK(ck.code == 0);
  CHECK(contains(ck.out, "no additive extension"));
  CHECK(run({"ck", "-k", "2", "--verify", "--bound", "3"}).code == 2);

  auto t = run({"recover-perm", "--oracle", "transpose", "--bound", "3", "-n", "3"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "outcome: permutational"));
  CHECK(contains(t.out, "pi: 1->3 2->5 3->1 4->6 5->2 6->4"));
  auto s = run({"recover-perm", "--oracle", "ck-swap:1", "--bound", "6"});
  CHECK(s.code == 1);
  CHECK(contains(s.out, "witness: (2,1)"));
  auto f = run({"recover-perm", "--oracle", data("ck1_swap.json")});
  CHECK(f.code == 1);
  CHECK(contains(f.out, "witness: (2,1)"));
  auto layered = run({"recover-perm", "--oracle", "layered:3", "--bound", "3", "--format", "json"});
  CHECK(layered.code == 1);
  CHECK(io::parse(layered.out)["outcome"] == "not permutational");
  CHECK(run({"recover-perm", "--oracle", "nonsense", "--bound", "3"}).code == 2);

  CHECK(run({"psi-example"}).code == 0);
  auto rep = run({"report", "-n", "5"});
  CHECK(rep.code == 0);
  CHECK(contains(rep.out, "PASS 1. facet census"));
  CHECK(contains(rep.out, "SKIP 2."));
}

TEST_CASE("usage errors and budgets") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"facets"}).code == 2);
  CHECK(run({"facets", "-n", "2"}).code == 2);
  CHECK(run({"--budget", "0", "facets", "-n", "3"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--budget", "5", "autgroup", "-n", "3"}).code == 3);
}

TEST_CASE("output is deterministic") {
  auto a = run({"--format", "json", "autgroup", "-n", "4"});
  auto b = run({"--format", "json", "autgroup", "-n", "4"});
  CHECK(a.out == b.out);
  auto c = run({"--jobs", "3", "--format", "json", "rays", "-n", "4"});
  auto d = run({"--format", "json", "rays", "-n", "4"});
  CHECK(c.out == d.out);
}
