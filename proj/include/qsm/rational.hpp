#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qsm {

using Integer = mpz_class;

/// Exact rational number, always stored reduced with a positive denominator,
/// so that structural equality coincides with numeric equality.
class Rational {
public:
  Rational() = default;
  Rational(long value) : value_(value) {}
  Rational(const Integer& value) : value_(value) {}
  /// Throws DomainError when `den` is zero.
  Rational(const Integer& num, const Integer& den);

  /// Parses "p/q" or "p" (optionally signed). Throws ParseError.
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const noexcept { return value_; }

  int sign() const { return sgn(value_); }
  bool isZero() const { return sign() == 0; }
  bool isInteger() const { return value_.get_den() == 1; }

  /// "p/q", or "p" when q = 1.
  std::string toString() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return fromMpq(-a.value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  static Rational fromMpq(mpq_class v) {
    Rational r;
    r.value_ = std::move(v);
    r.value_.canonicalize();
    return r;
  }

private:
  mpq_class value_;
};

using QVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

Rational dot(const QVector& a, const QVector& b);
Integer dot(const IntVector& a, const IntVector& b);
/// a . x for rational coefficients and an integer point.
Rational dot(const QVector& a, const IntVector& x);

QVector toRational(const IntVector& v);
std::string toString(const IntVector& v);

} // namespace qsm

template <> struct std::hash<qsm::Rational> {
  std::size_t operator()(const qsm::Rational& r) const {
    return std::hash<std::string>{}(r.toString());
  }
};
