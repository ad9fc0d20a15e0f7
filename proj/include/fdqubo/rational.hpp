#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fdqubo {

using Integer = mpz_class;

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator, so equality is
/// structural and `str()` is canonical (`p` or `p/q`).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(static_cast<long>(value)) {}           // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : value_(value) {}                   // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(const Integer& num, const Integer& den);

  /// Parses `p` or `p/q` (optional leading sign). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Integer floor() const;
  Integer ceil() const;
  Rational abs() const;

  /// Throws std::domain_error unless the value is an integer in int64 range.
  std::int64_t to_int64() const;
  double to_double() const { return value_.get_d(); }

  std::string str() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.value_ = -a.value_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_;
};

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Throws std::overflow_error if the value does not fit.
std::int64_t to_int64(const Integer& value);

}  // namespace fdqubo
