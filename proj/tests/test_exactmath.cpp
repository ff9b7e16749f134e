#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qsm/errors.hpp"
#include "qsm/linalg.hpp"
#include "qsm/rational.hpp"

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
} // namespace

TEST_CASE("rationals are stored reduced") {
  Rational a(Integer(6), Integer(-4));
  CHECK(a.toString() == "-3/2");
  CHECK(a.numerator() == -3);
  CHECK(a.denominator() == 2);
  CHECK(Rational(Integer(4), Integer(2)).toString() == "2");
  CHECK(Rational(Integer(4), Integer(2)) == Rational(2));
  CHECK(Rational(Integer(4), Integer(2)).isInteger());
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(Integer(3), Integer(4)));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("-10/4").toString() == "-5/2");
  CHECK_THROWS_AS(Rational::parse("10/-4"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
}

TEST_CASE("rational arithmetic and order") {
  Rational a = Rational::parse("1/3"), b = Rational::parse("1/6");
  CHECK(a + b == Rational::parse("1/2"));
  CHECK(a - b == b);
  CHECK(a * b == Rational::parse("1/18"));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational::parse("-1/3"));
  CHECK(b < a);
  CHECK(Rational(-1) < Rational(0));
  CHECK_THROWS_AS(a / Rational(0), DomainError);
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
}

TEST_CASE("large values stay exact") {
  Integer big("123456789012345678901234567890");
  Rational r(big, big * 3);
  CHECK(r == Rational::parse("1/3"));
  CHECK((Rational(big) * Rational(big)).toString() == Integer(big * big).get_str());
}

TEST_CASE("dot products and conversion") {
  CHECK(dot(q({1, -2, 3}), q({4, 5, 6})) == Rational(12));
  CHECK(dot(iv({1, -2, 3}), iv({4, 5, 6})) == 12);
  CHECK(dot(q({1, 1, -1}), iv({1, 0, 1})) == Rational(0));
  CHECK(toString(iv({1, -2, 0})) == "(1,-2,0)");
  CHECK(toRational(iv({2, 3})) == q({2, 3}));
}

TEST_CASE("rank") {
  std::vector<QVector> rows{q({1, 2, 3}), q({2, 4, 6}), q({0, 1, 1})};
  CHECK(rank(std::span<const QVector>(rows)) == 2);
  std::vector<IntVector> irows{iv({1, 2, 3}), iv({2, 4, 6}), iv({0, 1, 1})};
  CHECK(rank(std::span<const IntVector>(irows)) == 2);
  std::vector<IntVector> id{iv({1, 0}), iv({0, 1})};
  CHECK(rank(std::span<const IntVector>(id)) == 2);
  std::vector<QVector> ragged{q({1, 2}), q({1})};
  CHECK_THROWS_AS(rank(std::span<const QVector>(ragged)), DimensionError);
}

TEST_CASE("solve uses the right-hand side") {
  std::vector<QVector> m{q({1, 1, -1}), q({1, 0, 0}), q({0, 1, 0})};
  CHECK(solve(m, q({1, 0, 0})) == q({0, 0, -1}));
  CHECK(solve(m, q({0, 1, 0})) == q({1, 0, 1}));
  CHECK(solve(m, q({0, 0, 1})) == q({0, 1, 1}));
  std::vector<QVector> singular{q({1, 2}), q({2, 4})};
  CHECK_THROWS_AS(solve(singular, q({1, 1})), DomainError);
}

TEST_CASE("kernel is primitive and annihilated") {
  std::vector<QVector> rows{q({1, 1, -1})};
  auto k = kernel(std::span<const QVector>(rows), 3);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(dot(rows[0], v) == Rational(0));
  CHECK(kernel(std::span<const QVector>(), 2).size() == 2);
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(iv({4, -6, 0})) == iv({2, -3, 0}));
  CHECK(primitive(QVector{Rational::parse("1/2"), Rational::parse("-1/3")}) == iv({3, -2}));
  CHECK_THROWS_AS(primitive(iv({0, 0})), DomainError);
}

TEST_CASE("solve agrees with multiplication on random systems") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> e(-5, 5);
  int solved = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<QVector> m(4, QVector(4));
    QVector b(4);
    for (auto& r : m)
      for (auto& x : r) x = Rational(e(rng));
    for (auto& x : b) x = Rational(e(rng));
    if (rank(std::span<const QVector>(m)) < 4) continue;
    auto x = solve(m, b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(dot(m[i], x) == b[i]);
    ++solved;
  }
  CHECK(solved > 100);
}
