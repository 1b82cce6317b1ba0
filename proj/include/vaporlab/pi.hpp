#pragma once

#include <vaporlab/bigint.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace vaporlab {

/// pi lies in [lo / 2^bits, hi / 2^bits]. Endpoints are certified bounds,
/// not nearest roundings.
struct PiEnclosure {
  BigInt lo;
  BigInt hi;
  unsigned bits = 0;

  Rational lower() const { return Rational(lo, BigInt(1) << bits); }
  Rational upper() const { return Rational(hi, BigInt(1) << bits); }
};

namespace detail {

// Scaled alternating atan series: returns (sum, slack) with
// 2^bits * atan(1/x) in [sum - slack, sum + slack]. Each term is a single
// floor division of the scale by an exact denominator, so the per-term
// error is < 1; the truncated tail of the alternating series is < 1 as well.
inline std::pair<BigInt, BigInt> atan_inv_scaled(std::uint64_t x, unsigned bits) {
  const BigInt scale = BigInt(1) << bits;
  const BigInt x2 = BigInt(x) * x;
  BigInt xpow = x;  // x^(2k+1), exact
  BigInt sum = 0;
  BigInt terms = 0;
  for (std::uint64_t k = 0;; ++k) {
    BigInt term = scale / (xpow * (2 * k + 1));
    if (term == 0) break;
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
    ++terms;
    xpow *= x2;
  }
  return {sum, terms + 1};
}

}  // namespace detail

/// Machin's formula, pi = 16 atan(1/5) - 4 atan(1/239), with explicit
/// error accounting.
inline PiEnclosure pi_enclosure(unsigned bits) {
  auto [a5, s5] = detail::atan_inv_scaled(5, bits);
  auto [a239, s239] = detail::atan_inv_scaled(239, bits);
  BigInt mid = 16 * a5 - 4 * a239;
  BigInt slack = 16 * s5 + 4 * s239;
  return PiEnclosure{mid - slack, mid + slack, bits};
}

/// Exact floors of pi^n for n = 0..max_power. Each floor is certified by an
/// interval around pi^n whose endpoints share an integer part; the working
/// precision doubles until every floor in the range is certified.
inline std::vector<BigInt> certified_pi_power_floors(std::size_t max_power,
                                                     unsigned start_bits = 256) {
  for (unsigned bits = start_bits;; bits *= 2) {
    PiEnclosure pi = pi_enclosure(bits);
    if (pi.lo <= 0) continue;
    std::vector<BigInt> floors;
    floors.reserve(max_power + 1);
    BigInt lo = BigInt(1) << bits;  // scaled pi^0
    BigInt hi = lo;
    floors.push_back(1);
    bool certified = true;
    for (std::size_t n = 1; n <= max_power; ++n) {
      lo = (lo * pi.lo) >> bits;
      hi = ((hi * pi.hi) >> bits) + 1;
      BigInt fl = lo >> bits;
      BigInt fh = hi >> bits;
      if (fl != fh) {
        certified = false;
        break;
      }
      floors.push_back(fl);
    }
    if (certified) return floors;
  }
}

/// b_n = floor(pi^n) for n = 1..count.
inline std::vector<BigInt> floor_pi_powers(std::size_t count) {
  if (count == 0) throw std::invalid_argument("floor_pi_powers: count must be >= 1");
  auto floors = certified_pi_power_floors(count);
  return std::vector<BigInt>(floors.begin() + 1, floors.end());
}

}  // namespace vaporlab
