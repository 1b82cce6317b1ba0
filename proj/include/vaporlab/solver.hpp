#pragma once

#include <vaporlab/bigint.hpp>
#include <vaporlab/sequences.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vaporlab {

struct IndexTuplePair {
  std::vector<std::size_t> xs;
  std::vector<std::size_t> ys;

  bool operator==(const IndexTuplePair&) const = default;
  bool operator<(const IndexTuplePair& o) const {
    if (xs != o.xs) return xs < o.xs;
    return ys < o.ys;
  }
};

/// All index tuples solving x_1+..+x_m = y_1+..+y_n + r over a truncation,
/// lexicographically sorted by (xs, ys). When require_max_differ is set,
/// max-value-equal solutions are dropped and every surviving solution is
/// asserted to have indices <= the growth-certificate threshold.
struct SolutionSet {
  std::uint32_t m = 1;
  std::uint32_t n = 1;
  std::int64_t r = 0;
  bool require_max_differ = false;
  std::size_t truncation_length = 0;
  bool bound_checked = false;
  std::optional<std::size_t> max_index_bound;
  std::vector<IndexTuplePair> solutions;

  bool operator==(const SolutionSet&) const = default;
};

namespace detail {

/// Enumerates all pairs of non-decreasing index tuples (x-multiset,
/// y-multiset) with sum(x) = sum(y) + r, cutting branches whose minimal
/// completable sum exceeds or maximal completable sum falls short of the
/// reachable window.
template <class A, class Fn>
void lineq_multiset_solutions(const std::vector<A>& t, std::uint32_t m, std::uint32_t n,
                              const A& r, Fn&& emit) {
  const std::size_t len = t.size();
  const A& tmin = t.front();
  const A& tmax = t.back();
  std::vector<std::size_t> xs(m), ys(n);

  auto y_dfs = [&](auto&& self, std::size_t pos, std::size_t from, const A& need) -> void {
    if (pos == n) {
      if (need == 0) emit(xs, ys);
      return;
    }
    const std::size_t rem = n - pos;
    for (std::size_t j = from; j < len; ++j) {
      // all remaining entries are >= t[j]
      if (A(rem) * t[j] > need) break;
      if (t[j] + A(rem - 1) * tmax < need) continue;
      ys[pos] = j;
      self(self, pos + 1, j, need - t[j]);
    }
  };

  A ymin = A(n) * tmin + r;
  A ymax = A(n) * tmax + r;
  auto x_dfs = [&](auto&& self, std::size_t pos, std::size_t from, const A& sum) -> void {
    if (pos == m) {
      A need = sum - r;
      if (need >= A(n) * tmin && need <= A(n) * tmax) y_dfs(y_dfs, 0, 0, need);
      return;
    }
    const std::size_t rem = m - pos;
    for (std::size_t i = from; i < len; ++i) {
      if (sum + A(rem) * t[i] > ymax) break;
      if (sum + t[i] + A(rem - 1) * tmax < ymin) continue;
      xs[pos] = i;
      self(self, pos + 1, i, sum + t[i]);
    }
  };
  x_dfs(x_dfs, 0, 0, A(0));
}

inline std::vector<IndexTuplePair> expand_ordered(
    const std::vector<IndexTuplePair>& multisets) {
  std::vector<IndexTuplePair> out;
  for (const auto& ms : multisets) {
    std::vector<std::size_t> xs = ms.xs;
    do {
      std::vector<std::size_t> ys = ms.ys;
      do {
        out.push_back({xs, ys});
      } while (std::next_permutation(ys.begin(), ys.end()));
    } while (std::next_permutation(xs.begin(), xs.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline SolutionSet enumerate_lineq_solutions(const SparseSequence& seq, std::uint32_t m,
                                             std::uint32_t n, std::int64_t r,
                                             bool require_max_differ) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("enumerate_lineq_solutions: m, n must be >= 1");
  SolutionSet set;
  set.m = m;
  set.n = n;
  set.r = r;
  set.require_max_differ = require_max_differ;
  set.truncation_length = seq.length();

  std::vector<IndexTuplePair> multisets;
  auto collect = [&](const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys) {
    if (require_max_differ && xs.back() == ys.back()) return;
    multisets.push_back({xs, ys});
  };

  // Sums stay within 64 bits whenever the largest reachable magnitude does;
  // otherwise fall back to arbitrary precision.
  BigInt reach = BigInt(std::max(m, n)) * seq.terms.back() + (r < 0 ? BigInt(-r) : BigInt(r));
  if (reach < (BigInt(1) << 62)) {
    std::vector<long long> t;
    t.reserve(seq.length());
    for (const BigInt& v : seq.terms) t.push_back(static_cast<long long>(v));
    detail::lineq_multiset_solutions<long long>(t, m, n, r, collect);
  } else {
    detail::lineq_multiset_solutions<BigInt>(seq.terms, m, n, BigInt(r), collect);
  }

  if (require_max_differ) {
    std::uint64_t t = std::max(m, n);
    std::uint64_t r_abs =
        r < 0 ? 0ull - static_cast<std::uint64_t>(r) : static_cast<std::uint64_t>(r);
    std::optional<GrowthCertificate> cert;
    if (seq.length() >= 2) cert = try_growth_certificate(seq, t, r_abs);
    if (cert) {
      set.bound_checked = true;
      set.max_index_bound = cert->k;
      for (const auto& ms : multisets) {
        std::size_t top = std::max(ms.xs.back(), ms.ys.back());
        if (top > cert->k)
          throw Error("falsified: max-differing solution with index " +
                      std::to_string(top) + " exceeds growth threshold k=" +
                      std::to_string(cert->k));
      }
    }
  }

  set.solutions = detail::expand_ordered(multisets);
  return set;
}

/// All tuples of pairwise-distinct sequence values (v_1..v_n) with
/// multiplier*target = sum c_i * v_i, canonically (lexicographically) ordered.
inline std::vector<std::vector<BigInt>> solve_combination(const SparseSequence& seq,
                                                          const std::vector<std::int64_t>& coeffs,
                                                          std::uint64_t multiplier,
                                                          const BigInt& target) {
  if (coeffs.empty()) throw std::invalid_argument("solve_combination: empty coefficients");
  for (std::int64_t c : coeffs)
    if (c == 0) throw std::invalid_argument("solve_combination: coefficients must be nonzero");
  if (multiplier == 0)
    throw std::invalid_argument("solve_combination: multiplier must be >= 1");

  const std::size_t n = coeffs.size();
  const std::size_t len = seq.length();
  const auto& t = seq.terms;
  const BigInt goal = BigInt(multiplier) * target;

  std::vector<BigInt> suf_min(n + 1, 0), suf_max(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    BigInt lo = coeffs[i] > 0 ? coeffs[i] * t.front() : coeffs[i] * t.back();
    BigInt hi = coeffs[i] > 0 ? coeffs[i] * t.back() : coeffs[i] * t.front();
    suf_min[i] = suf_min[i + 1] + lo;
    suf_max[i] = suf_max[i + 1] + hi;
  }

  std::vector<std::vector<BigInt>> out;
  std::vector<std::size_t> pick(n);
  std::vector<bool> used(len, false);
  auto dfs = [&](auto&& self, std::size_t pos, const BigInt& partial) -> void {
    if (partial + suf_min[pos] > goal || partial + suf_max[pos] < goal) return;
    if (pos == n) {
      if (partial == goal) {
        std::vector<BigInt> vals;
        vals.reserve(n);
        for (std::size_t idx : pick) vals.push_back(t[idx]);
        out.push_back(std::move(vals));
      }
      return;
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (used[i]) continue;
      used[i] = true;
      pick[pos] = i;
      self(self, pos + 1, partial + coeffs[pos] * t[i]);
      used[i] = false;
    }
  };
  dfs(dfs, 0, BigInt(0));
  return out;  // DFS order is lexicographic in the index tuple, hence in values
}

/// Unique factorial-base digits: t = sum c_k * k! with 0 <= c_k <= k,
/// returned as (c_1, c_2, ...) without trailing zeros.
inline std::vector<std::uint64_t> factorial_base(const BigInt& t) {
  if (t < 0) throw std::invalid_argument("factorial_base: t must be >= 0");
  std::vector<std::uint64_t> digits;
  BigInt u = t;
  std::uint64_t k = 1;
  while (u > 0) {
    digits.push_back(static_cast<std::uint64_t>(u % (k + 1)));
    u /= k + 1;
    ++k;
  }
  return digits;
}

inline BigInt factorial_base_value(const std::vector<std::uint64_t>& digits) {
  BigInt sum = 0;
  BigInt fact = 1;
  for (std::size_t k = 1; k <= digits.size(); ++k) {
    fact *= k;
    if (digits[k - 1] > k)
      throw Error("factorial-base digit c_" + std::to_string(k) + " exceeds " +
                  std::to_string(k));
    sum += fact * digits[k - 1];
  }
  return sum;
}

}  // namespace vaporlab
