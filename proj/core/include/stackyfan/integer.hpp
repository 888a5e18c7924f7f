#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace stackyfan {

/// Arbitrary-precision integer used for all lattice algebra.
using Integer = boost::multiprecision::cpp_int;
/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Integer& a) { return a.str(); }
std::string to_string(const Rational& q);

/// Parses an optionally signed decimal integer; throws DomainError otherwise.
Integer parse_integer(const std::string& text);

/// Narrowing conversion that throws when the value does not fit.
std::int64_t to_int64(const Integer& a);

Integer binomial(std::int64_t n, std::int64_t k);
Integer factorial(std::int64_t n);
Integer power(const Integer& base, unsigned exponent);

}  // namespace stackyfan
