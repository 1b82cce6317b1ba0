#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vaporlab {

using BigInt = boost::multiprecision::cpp_int;

/// Domain-level failure (certificate missing, falsified bound, bad input data).
/// Precondition violations throw std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw Error("empty integer literal");
  try {
    return BigInt(text);
  } catch (const std::exception&) {
    throw Error("not a decimal integer: '" + text + "'");
  }
}

inline std::int64_t to_i64(const BigInt& v) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    throw Error("value out of 64-bit range: " + v.str());
  return static_cast<std::int64_t>(v);
}

/// Exact rational with reduced representation, den > 0.
struct Rational {
  BigInt num = 0;
  BigInt den = 1;

  Rational() = default;
  Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }

  std::string str() const { return num.str() + "/" + den.str(); }
};

inline BigInt factorial_big(std::uint64_t n) {
  BigInt f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace vaporlab
