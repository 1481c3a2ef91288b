#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace umps {

// Exact arbitrary-precision integers and rationals. Everything in this
// library computes over Q; no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den", or just "num" when the denominator is 1.
inline std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  const Int num(s.substr(0, slash));
  const Int den(s.substr(slash + 1));
  if (den == 0)
    throw std::invalid_argument("rational_from_string: zero denominator in '" + s + "'");
  return Rational(num, den);
}

inline Rational rational_pow(const Rational& q, std::uint32_t e) {
  using boost::multiprecision::pow;
  if (e == 0) return Rational(1);
  return Rational(pow(numerator(q), e), pow(denominator(q), e));
}

inline std::int64_t to_int64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("to_int64: " + v.str() + " does not fit");
  return v.convert_to<std::int64_t>();
}

// Exact integer division; throws if the quotient is not integral. Used for
// the closed-form counting formulas, which are integral by construction.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0 || a % b != 0)
    throw std::logic_error("exact_div: " + a.str() + " not divisible by " + b.str());
  return a / b;
}

}  // namespace umps
