#include "fdqubo/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace fdqubo {

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den))) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text));
  }
  auto den_text = text.substr(slash + 1);
  if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer den = parse_int(den_text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(parse_int(text.substr(0, slash)), den);
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::int64_t Rational::to_int64() const {
  if (!is_integer()) {
    throw std::domain_error("rational " + str() + " is not an integer");
  }
  return fdqubo::to_int64(value_.get_num());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    throw std::domain_error("division by zero");
  }
  value_ /= o.value_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) {
    return value_.get_num().get_str();
  }
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) {
    throw std::overflow_error("integer " + value.get_str() + " exceeds 64 bits");
  }
  return value.get_si();
}

}  // namespace fdqubo
