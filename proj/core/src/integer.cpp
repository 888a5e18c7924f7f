#include "stackyfan/integer.hpp"

#include "stackyfan/error.hpp"

#include <cctype>
#include <limits>

namespace stackyfan {

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Integer parse_integer(const std::string& text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw DomainError("not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw DomainError("not an integer: '" + text + "'");
  return Integer(text[0] == '+' ? text.substr(1) : text);
}

std::int64_t to_int64(const Integer& a) {
  if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min())
    throw BoundError("integer " + a.str() + " does not fit in 64 bits");
  return a.convert_to<std::int64_t>();
}

Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

Integer factorial(std::int64_t n) {
  Integer out = 1;
  for (std::int64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

Integer power(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

}  // namespace stackyfan
