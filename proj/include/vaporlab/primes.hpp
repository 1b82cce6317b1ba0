#pragma once

#include <vaporlab/bigint.hpp>

#include <cstdint>
#include <vector>

namespace vaporlab {

/// True iff n = p^j for a prime p and j >= 1.
inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;  // prime
}

/// First `count` prime powers in increasing order: 2, 3, 4, 5, 7, 8, 9, 11, ...
inline std::vector<std::uint64_t> prime_powers(std::size_t count) {
  if (count == 0) throw std::invalid_argument("prime_powers: count must be >= 1");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t n = 2; out.size() < count; ++n)
    if (is_prime_power(n)) out.push_back(n);
  return out;
}

/// lcm(p_1, ..., p_k) over the prime-power enumeration; k = 0 gives 1.
inline BigInt prime_power_lcm(std::size_t k) {
  BigInt l = 1;
  if (k == 0) return l;
  for (std::uint64_t p : prime_powers(k)) l = boost::multiprecision::lcm(l, BigInt(p));
  return l;
}

/// N_0 = 0; N_k = sum_{t=1..k} (lcm(p_1,...,p_t) - 1). Nondecreasing in k.
inline BigInt crt_schedule(std::size_t k) {
  BigInt n = 0;
  BigInt l = 1;
  auto pps = k == 0 ? std::vector<std::uint64_t>{} : prime_powers(k);
  for (std::size_t t = 1; t <= k; ++t) {
    l = boost::multiprecision::lcm(l, BigInt(pps[t - 1]));
    n += l - 1;
  }
  return n;
}

}  // namespace vaporlab
