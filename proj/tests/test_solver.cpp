#include <vaporlab/solver.hpp>

#include <doctest.h>

#include <random>

using namespace vaporlab;

namespace {

// Naive O(length^(m+n)) oracle: plain odometer over ordered index tuples,
// max-differ filtered by comparing maximum VALUES. No pruning, no multisets.
std::vector<IndexTuplePair> naive_lineq(const SparseSequence& seq, std::uint32_t m,
                                        std::uint32_t n, std::int64_t r,
                                        bool require_max_differ) {
  const auto& t = seq.terms;
  const std::size_t len = seq.length();
  const std::size_t v = m + n;
  std::vector<std::size_t> idx(v, 0);
  std::vector<IndexTuplePair> out;
  while (true) {
    BigInt lhs = 0, rhs = r;
    for (std::size_t i = 0; i < m; ++i) lhs += t[idx[i]];
    for (std::size_t i = m; i < v; ++i) rhs += t[idx[i]];
    if (lhs == rhs) {
      BigInt max_x = t[idx[0]], max_y = t[idx[m]];
      for (std::size_t i = 0; i < m; ++i) max_x = std::max(max_x, t[idx[i]]);
      for (std::size_t i = m; i < v; ++i) max_y = std::max(max_y, t[idx[i]]);
      if (!require_max_differ || max_x != max_y)
        out.push_back({{idx.begin(), idx.begin() + m}, {idx.begin() + m, idx.end()}});
    }
    std::size_t pos = v;
    while (pos-- > 0) {
      if (++idx[pos] < len) break;
      idx[pos] = 0;
      if (pos == 0) return out;  // odometer enumerates in lex order
    }
  }
}

}  // namespace

TEST_CASE("lineq enumeration matches the worked examples") {
  auto seq = SparseSequence::factorials(1, 10);

  auto set = enumerate_lineq_solutions(seq, 1, 2, 0, true);
  REQUIRE(set.solutions.size() == 1);
  CHECK(set.solutions[0].xs == std::vector<std::size_t>{1});
  CHECK(set.solutions[0].ys == std::vector<std::size_t>{0, 0});
  CHECK(set.bound_checked);
  CHECK(set.max_index_bound == 1);

  CHECK(enumerate_lineq_solutions(seq, 1, 1, 0, true).solutions.empty());

  auto with_r = enumerate_lineq_solutions(seq, 2, 1, -3, false);
  IndexTuplePair expected{{0, 1}, {2}};
  bool found = false;
  for (const auto& s : with_r.solutions) found |= (s == expected);
  CHECK(found);
}

TEST_CASE("solutions are lex-sorted, duplicate-free, and exact") {
  auto seq = SparseSequence::factorials(1, 9);
  auto set = enumerate_lineq_solutions(seq, 2, 2, 0, false);
  CHECK(std::is_sorted(set.solutions.begin(), set.solutions.end()));
  CHECK(std::adjacent_find(set.solutions.begin(), set.solutions.end()) ==
        set.solutions.end());
  for (const auto& s : set.solutions) {
    BigInt lhs = 0, rhs = 0;
    for (auto i : s.xs) lhs += seq.terms[i];
    for (auto i : s.ys) rhs += seq.terms[i];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pruned enumeration equals the naive oracle") {
  for (std::size_t len : {1, 4, 7}) {
    auto seq = SparseSequence::factorials(1, len);
    for (std::uint32_t m = 1; m <= 3; ++m)
      for (std::uint32_t n = 1; n <= 2; ++n)
        for (std::int64_t r : {-7, -3, 0, 1, 5, 26}) {
          for (bool differ : {false, true}) {
            auto pruned = enumerate_lineq_solutions(seq, m, n, r, differ);
            CHECK(pruned.solutions == naive_lineq(seq, m, n, r, differ));
          }
        }
  }
  // a non-factorial sequence with repeats-heavy structure
  auto seq = SparseSequence::explicit_terms({BigInt(1), BigInt(3), BigInt(4), BigInt(7),
                                             BigInt(11), BigInt(18)});
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 3; ++n)
      for (std::int64_t r : {-4, 0, 3})
        CHECK(enumerate_lineq_solutions(seq, m, n, r, false).solutions ==
              naive_lineq(seq, m, n, r, false));
}

TEST_CASE("the arbitrary-precision path agrees with the oracle") {
  // terms around 2^80 force the BigInt branch
  std::vector<BigInt> terms;
  BigInt big = BigInt(1) << 80;
  terms = {big, big + 5, 2 * big + 5, 4 * big + 3};
  auto seq = SparseSequence::explicit_terms(terms);
  for (std::uint32_t m = 1; m <= 2; ++m)
    for (std::uint32_t n = 1; n <= 2; ++n)
      for (std::int64_t r : {-5, 0, 5})
        CHECK(enumerate_lineq_solutions(seq, m, n, r, false).solutions ==
              naive_lineq(seq, m, n, r, false));
}

TEST_CASE("solution indices respect the growth bound on factorials") {
  auto seq = SparseSequence::factorials(1, 12);
  for (std::uint32_t m = 1; m <= 3; ++m)
    for (std::uint32_t n = 1; n <= 3; ++n)
      for (std::int64_t r = -10; r <= 10; ++r) {
        auto set = enumerate_lineq_solutions(seq, m, n, r, true);  // throws on violation
        REQUIRE(set.bound_checked);
        for (const auto& s : set.solutions) {
          for (auto i : s.xs) CHECK(i <= *set.max_index_bound);
          for (auto i : s.ys) CHECK(i <= *set.max_index_bound);
        }
      }
}

TEST_CASE("a missing growth certificate skips the bound check with a flag") {
  // [1,2,3]: 3 <= 2*2, so no threshold for t=2 exists within the truncation
  auto seq = SparseSequence::explicit_terms({BigInt(1), BigInt(2), BigInt(3)});
  auto set = enumerate_lineq_solutions(seq, 1, 2, 0, true);
  CHECK_FALSE(set.bound_checked);
  CHECK_FALSE(set.max_index_bound.has_value());
  REQUIRE(set.solutions.size() == 3);  // 2 = 1+1, 3 = 1+2, 3 = 2+1
  CHECK(set.solutions[0] == IndexTuplePair{{1}, {0, 0}});
  CHECK(set.solutions[1] == IndexTuplePair{{2}, {0, 1}});
  CHECK(set.solutions[2] == IndexTuplePair{{2}, {1, 0}});

  auto single = SparseSequence::explicit_terms({BigInt(5)});
  auto s1 = enumerate_lineq_solutions(single, 1, 1, 0, true);
  CHECK_FALSE(s1.bound_checked);
  CHECK(s1.solutions.empty());  // the diagonal has equal maxima
}

TEST_CASE("combination solving matches the worked examples") {
  auto seq = SparseSequence::factorials(1, 10);

  auto sols = solve_combination(seq, {1, 1}, 1, BigInt(30));
  REQUIRE(sols.size() == 2);
  CHECK(sols[0] == std::vector<BigInt>{6, 24});
  CHECK(sols[1] == std::vector<BigInt>{24, 6});

  CHECK(solve_combination(seq, {1, 1}, 1, BigInt(4)).empty());

  sols = solve_combination(seq, {2, -1}, 1, BigInt(0));
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == std::vector<BigInt>{1, 2});
}

TEST_CASE("combination solving agrees with lineq on shared instances") {
  // shared instances: the combo target is itself a sequence value, so
  // a = v1 + v2 matches lineq x = y1 + y2 with x pinned to that value
  auto seq = SparseSequence::explicit_terms(
      {BigInt(1), BigInt(2), BigInt(3), BigInt(4), BigInt(5), BigInt(7), BigInt(9)});
  auto set = enumerate_lineq_solutions(seq, 1, 2, 0, false);
  for (std::size_t xi = 0; xi < seq.length(); ++xi) {
    auto combo = solve_combination(seq, {1, 1}, 1, seq.terms[xi]);
    std::size_t lineq_count = 0;
    for (const auto& s : set.solutions)
      if (s.xs[0] == xi && s.ys[0] != s.ys[1]) ++lineq_count;
    CHECK(combo.size() == lineq_count);
    for (const auto& tup : combo) CHECK(tup[0] + tup[1] == seq.terms[xi]);
  }
}

TEST_CASE("factorial base digits") {
  CHECK(factorial_base(BigInt(0)).empty());
  CHECK(factorial_base(BigInt(30)) == std::vector<std::uint64_t>{0, 0, 1, 1});
  CHECK(factorial_base(BigInt(7)) == std::vector<std::uint64_t>{1, 0, 1});
  CHECK_THROWS_AS(factorial_base(BigInt(-1)), std::invalid_argument);
}

TEST_CASE("factorial base round-trips ten thousand random values") {
  std::mt19937_64 rng(424242);
  BigInt cap = 1;
  for (int i = 0; i < 40; ++i) cap *= 10;  // 10^40
  for (int round = 0; round < 10000; ++round) {
    BigInt t = 0;
    for (int limb = 0; limb < 3; ++limb) t = (t << 48) | (rng() & 0xffffffffffffull);
    t %= cap;
    auto digits = factorial_base(t);
    for (std::size_t k = 1; k <= digits.size(); ++k) CHECK(digits[k - 1] <= k);
    if (!digits.empty()) CHECK(digits.back() != 0);
    CHECK(factorial_base_value(digits) == t);
  }
}
