#include "qsm/rational.hpp"

#include <ostream>
#include <sstream>

#include "qsm/errors.hpp"

namespace qsm {

namespace {

bool parseInteger(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') return false;
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

} // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  Integer num;
  Integer den = 1;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!parseInteger(text, num)) throw ParseError("not a rational: '" + std::string(text) + "'");
  } else {
    auto d = text.substr(slash + 1);
    if (!parseInteger(text.substr(0, slash), num) || d.empty() || d[0] == '-' || d[0] == '+' ||
        !parseInteger(d, den))
      throw ParseError("not a rational: '" + std::string(text) + "'");
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string Rational::toString() const {
  if (isInteger()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.isZero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.toString(); }

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].isZero() && !b[i].isZero()) acc += a[i].raw() * b[i].raw();
  return Rational::fromMpq(acc);
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rational dot(const QVector& a, const IntVector& x) {
  if (a.size() != x.size()) throw DimensionError("dot: length mismatch");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].isZero() && x[i] != 0) acc += a[i].raw() * x[i];
  return Rational::fromMpq(acc);
}

QVector toRational(const IntVector& v) { return QVector(v.begin(), v.end()); }

std::string toString(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

} // namespace qsm
