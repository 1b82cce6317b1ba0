#include <vaporlab/pi.hpp>
#include <vaporlab/sequences.hpp>

#include <doctest.h>

#include <random>

using namespace vaporlab;

namespace {

std::vector<BigInt> bigs(std::initializer_list<long long> vs) {
  std::vector<BigInt> out;
  for (long long v : vs) out.push_back(v);
  return out;
}

// Independent minimal stabilization index: forward scan over all candidates.
std::size_t oracle_stabilization(const std::vector<BigInt>& terms, std::uint64_t m) {
  for (std::size_t n0 = 0; n0 < terms.size(); ++n0) {
    bool ok = true;
    for (std::size_t i = n0; i < terms.size(); ++i)
      if (residue_of(terms[i], m) != residue_of(terms[n0], m)) ok = false;
    if (ok) return n0;
  }
  return terms.size();
}

// Independent minimal growth threshold: test each k from 0 up.
std::optional<std::size_t> oracle_growth_k(const std::vector<BigInt>& terms, std::uint64_t t,
                                           std::uint64_t r_abs) {
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    bool ok = true;
    for (std::size_t i = k; i + 1 < terms.size(); ++i)
      if (terms[i + 1] <= t * terms[i] + r_abs) ok = false;
    if (ok) return k;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("factorials produce the expected truncations") {
  CHECK(SparseSequence::factorials(1, 5).terms == bigs({1, 2, 6, 24, 120}));
  CHECK(SparseSequence::factorials(2, 4).terms == bigs({2, 6, 24, 120}));
  CHECK_THROWS_AS(SparseSequence::factorials(0, 3), Error);
}

TEST_CASE("sequence invariants are enforced") {
  CHECK_THROWS_AS(SparseSequence::explicit_terms(bigs({1, 2, 2})), Error);
  CHECK_THROWS_AS(SparseSequence::explicit_terms(bigs({0, 1})), Error);
  CHECK_THROWS_AS(SparseSequence::explicit_terms({}), Error);

  for (std::uint64_t start : {1, 2, 5}) {
    auto seq = SparseSequence::factorials(start, 9);
    for (std::size_t i = 0; i + 1 < seq.length(); ++i) {
      CHECK(seq.terms[i] < seq.terms[i + 1]);
      CHECK(seq.terms[i + 1] == seq.terms[i] * (start + i + 1));
    }
  }
}

TEST_CASE("residue certificates match the worked examples") {
  auto cert = residue_certificate(SparseSequence::factorials(1, 6), 6);
  CHECK(cert.modulus == 6);
  CHECK(cert.stabilization_index == 2);
  CHECK(cert.stable_residue == 0);
  CHECK_FALSE(cert.degenerate);

  cert = residue_certificate(SparseSequence::factorials(1, 6), 2);
  CHECK(cert.stabilization_index == 1);
  CHECK(cert.stable_residue == 0);

  cert = residue_certificate(SparseSequence::explicit_terms(bigs({5, 10, 15})), 5);
  CHECK(cert.stabilization_index == 0);
  CHECK(cert.stable_residue == 0);
}

TEST_CASE("residue certificates are minimal and re-verifiable on random data") {
  std::mt19937_64 rng(20250808);
  for (int round = 0; round < 200; ++round) {
    std::vector<BigInt> terms;
    BigInt cur = 1 + static_cast<long long>(rng() % 50);
    std::size_t len = 2 + rng() % 14;
    for (std::size_t i = 0; i < len; ++i) {
      terms.push_back(cur);
      cur += 1 + static_cast<long long>(rng() % 37);
    }
    auto seq = SparseSequence::explicit_terms(terms);
    std::uint64_t m = 2 + rng() % 11;
    auto cert = residue_certificate(seq, m);
    CHECK(cert.stabilization_index == oracle_stabilization(terms, m));
    CHECK(verify_residue_certificate(seq, cert));
    CHECK(cert.degenerate == (cert.stabilization_index + 1 == seq.length()));
  }
}

TEST_CASE("growth certificates match the worked examples") {
  auto seq = SparseSequence::factorials(1, 8);
  CHECK(growth_certificate(seq, 2, 0).k == 1);
  CHECK(growth_certificate(seq, 1, 0).k == 0);
  CHECK(growth_certificate(seq, 3, 10).k == 3);
  CHECK(verify_growth_certificate(seq, growth_certificate(seq, 3, 10)));

  auto slow = SparseSequence::explicit_terms(bigs({1, 2, 3, 4, 5, 6}));
  CHECK_FALSE(try_growth_certificate(slow, 2, 0).has_value());
  CHECK_THROWS_AS(growth_certificate(slow, 2, 0), Error);
}

TEST_CASE("growth certificates agree with the scan oracle on random data") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<BigInt> terms;
    BigInt cur = 1 + static_cast<long long>(rng() % 5);
    std::size_t len = 2 + rng() % 10;
    for (std::size_t i = 0; i < len; ++i) {
      terms.push_back(cur);
      cur = cur * (1 + rng() % 4) + 1 + static_cast<long long>(rng() % 9);
    }
    auto seq = SparseSequence::explicit_terms(terms);
    std::uint64_t t = 1 + rng() % 4;
    std::uint64_t r_abs = rng() % 12;
    auto got = try_growth_certificate(seq, t, r_abs);
    auto want = oracle_growth_k(terms, t, r_abs);
    CHECK(got.has_value() == want.has_value());
    if (got) {
      CHECK(got->k == *want);
      CHECK(verify_growth_certificate(seq, *got));
    }
  }
}

TEST_CASE("prime powers and the CRT schedule") {
  CHECK(prime_powers(1) == std::vector<std::uint64_t>{2});
  CHECK(prime_powers(5) == std::vector<std::uint64_t>{2, 3, 4, 5, 7});
  CHECK(prime_powers(10) == std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16});

  // distinct-prime-factor oracle for prime-power detection
  for (std::uint64_t n = 0; n <= 500; ++n) {
    std::uint64_t distinct = 0;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= n; ++p)
      if (m % p == 0) {
        ++distinct;
        while (m % p == 0) m /= p;
      }
    if (m > 1) ++distinct;
    CHECK(is_prime_power(n) == (n >= 2 && distinct == 1));
  }

  CHECK(crt_schedule(0) == 0);
  CHECK(crt_schedule(1) == 1);
  CHECK(crt_schedule(2) == 6);
  CHECK(crt_schedule(3) == 17);
  CHECK(crt_schedule(4) == 76);
  CHECK(crt_schedule(5) == 495);
  for (std::size_t k = 0; k < 8; ++k) CHECK(crt_schedule(k) <= crt_schedule(k + 1));
}

TEST_CASE("crt_steer reproduces the hand-traced recursion") {
  CHECK(crt_steer(bigs({3})) == bigs({3}));
  CHECK(crt_steer(bigs({3, 3, 3, 3, 3, 3, 3})) == bigs({3, 4, 4, 4, 4, 4, 6}));
}

TEST_CASE("inner CRT shifts are the unique admissible representatives") {
  CrtStages st(5);
  std::mt19937_64 rng(99);
  for (std::size_t k = 1; k <= 4; ++k) {
    BigInt lcm_k = st.lcm_prefix[k];
    BigInt lcm_prev = st.lcm_prefix[k - 1];
    for (int round = 0; round < 40; ++round) {
      // b must be 0 mod p_t for t < k: any multiple of the previous lcm works
      BigInt b = lcm_prev * static_cast<long long>(rng() % 1000) +
                 (rng() % 2 ? lcm_prev * -7 : BigInt(0));
      BigInt got = crt_step_shift(b, k, st);
      // exhaustive independent scan of the full interval
      std::vector<BigInt> sols;
      for (BigInt r = 0; r < lcm_k; ++r) {
        bool ok = (b + r) % st.pps[k - 1] == 0;
        for (std::size_t t = 0; t + 1 < k && ok; ++t)
          if (r % st.pps[t] != 0) ok = false;
        if (ok) sols.push_back(r);
      }
      REQUIRE(sols.size() == 1);
      CHECK(sols[0] == got);
    }
  }
}

TEST_CASE("slow-shift guarantees hold for the floor(pi^n) base") {
  auto base = certified_pi_power_floors(80);  // n = 0..80
  auto steered = crt_steer(base);
  REQUIRE(steered.size() == base.size());
  CrtStages st(6);
  for (std::size_t n = 0; n < steered.size(); ++n) {
    BigInt diff = steered[n] - base[n];
    if (diff < 0) diff = -diff;
    CHECK(diff <= n);
    std::size_t k_n = crt_stage_count(n, st);
    for (std::size_t t = 1; t <= k_n; ++t)
      CHECK(steered[n] % st.pps[t - 1] == 0);
  }
  // N_4 = 76, lcm(2,3,4,5) = 60
  for (std::size_t n = 76; n < steered.size(); ++n) CHECK(steered[n] % 60 == 0);
}

TEST_CASE("vaporous report for factorials") {
  auto rep = vaporous_report(SparseSequence::factorials(1, 12), 10, 5);
  REQUIRE(rep.residue_certs.size() == 9);
  for (const auto& c : rep.residue_certs) {
    CHECK(c.stable_residue == 0);
    CHECK(c.stabilization_index <= c.modulus - 1);
    CHECK_FALSE(c.degenerate);
  }
  CHECK(rep.all_stabilized);
  CHECK(rep.min_tail_ratio == Rational(7, 1));  // 7!/6!
  CHECK(rep.generator_proved);
}

TEST_CASE("vaporous report for the steered pi sequence") {
  auto base = certified_pi_power_floors(84);
  auto seq = SparseSequence::steered(crt_steer(base), "pi-floor:0..84");
  auto rep = vaporous_report(seq, 6, 40);  // modulus 5 stabilizes at index 76
  CHECK(rep.all_stabilized);
  for (const auto& c : rep.residue_certs) CHECK(c.stable_residue == 0);
  CHECK_FALSE(rep.generator_proved);
  CHECK(Rational(313, 100) < rep.min_tail_ratio);
  CHECK(rep.min_tail_ratio < Rational(315, 100));
}

TEST_CASE("vaporous report flags non-stabilizing moduli") {
  auto rep = vaporous_report(SparseSequence::explicit_terms(bigs({1, 2, 4, 8})), 3, 0);
  CHECK_FALSE(rep.all_stabilized);
  CHECK(rep.residue_certs[1].modulus == 3);
  CHECK(rep.residue_certs[1].degenerate);  // residues 1,2,1,2
}
