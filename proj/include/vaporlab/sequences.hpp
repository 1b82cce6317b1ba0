#pragma once

#include <vaporlab/bigint.hpp>
#include <vaporlab/primes.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vaporlab {

enum class SeqKind { Factorial, Steered, Explicit };

inline const char* seq_kind_name(SeqKind k) {
  switch (k) {
    case SeqKind::Factorial: return "factorial";
    case SeqKind::Steered: return "steered";
    case SeqKind::Explicit: return "explicit";
  }
  return "?";
}

/// A strictly increasing finite truncation of a positive-integer sequence.
/// All constructors validate the invariants: terms strictly increasing,
/// all terms >= 1, and the factorial identity for Factorial kind.
struct SparseSequence {
  SeqKind kind = SeqKind::Explicit;
  std::uint64_t start = 0;  // factorial start index (Factorial kind only)
  std::string descriptor;   // base descriptor (Steered kind only)
  std::vector<BigInt> terms;

  std::size_t length() const { return terms.size(); }

  bool operator==(const SparseSequence&) const = default;

  static SparseSequence factorials(std::uint64_t start, std::uint64_t count) {
    if (start == 0)
      throw Error("factorials: start = 0 rejected (0! = 1! breaks strict increase)");
    if (count == 0) throw std::invalid_argument("factorials: count must be >= 1");
    SparseSequence s;
    s.kind = SeqKind::Factorial;
    s.start = start;
    s.terms.reserve(count);
    BigInt f = factorial_big(start);
    s.terms.push_back(f);
    for (std::uint64_t i = 1; i < count; ++i) {
      f *= start + i;
      s.terms.push_back(f);
    }
    s.check();
    return s;
  }

  static SparseSequence explicit_terms(std::vector<BigInt> terms) {
    SparseSequence s;
    s.kind = SeqKind::Explicit;
    s.terms = std::move(terms);
    s.check();
    return s;
  }

  static SparseSequence steered(std::vector<BigInt> terms, std::string descriptor) {
    SparseSequence s;
    s.kind = SeqKind::Steered;
    s.descriptor = std::move(descriptor);
    s.terms = std::move(terms);
    s.check();
    return s;
  }

  void check() const {
    if (terms.empty()) throw Error("sequence must have at least one term");
    if (terms.front() < 1) throw Error("sequence terms must be >= 1");
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      if (terms[i] >= terms[i + 1])
        throw Error("sequence not strictly increasing at index " + std::to_string(i + 1));
    if (kind == SeqKind::Factorial) {
      if (terms[0] != factorial_big(start))
        throw Error("factorial sequence does not start at start!");
      for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        if (terms[i + 1] != terms[i] * (start + i + 1))
          throw Error("factorial identity broken at index " + std::to_string(i + 1));
    }
  }
};

/// terms[n] ≡ stable_residue (mod modulus) for all n >= stabilization_index
/// within the truncation; stabilization_index is minimal. degenerate means the
/// certificate is witnessed only by the final term, i.e. the truncation shows
/// no stabilization.
struct ResidueCertificate {
  std::uint64_t modulus = 2;
  std::size_t stabilization_index = 0;
  std::uint64_t stable_residue = 0;
  bool degenerate = false;

  bool operator==(const ResidueCertificate&) const = default;
};

inline std::uint64_t residue_of(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline ResidueCertificate residue_certificate(const SparseSequence& seq, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("residue_certificate: modulus must be >= 2");
  ResidueCertificate cert;
  cert.modulus = m;
  cert.stable_residue = residue_of(seq.terms.back(), m);
  std::size_t n0 = seq.length() - 1;
  while (n0 > 0 && residue_of(seq.terms[n0 - 1], m) == cert.stable_residue) --n0;
  cert.stabilization_index = n0;
  cert.degenerate = (n0 + 1 == seq.length());
  return cert;
}

/// Re-verifies a certificate from (seq, fields) alone.
inline bool verify_residue_certificate(const SparseSequence& seq,
                                       const ResidueCertificate& c) {
  if (c.stabilization_index >= seq.length()) return false;
  for (std::size_t n = c.stabilization_index; n < seq.length(); ++n)
    if (residue_of(seq.terms[n], c.modulus) != c.stable_residue) return false;
  if (c.stabilization_index > 0 &&
      residue_of(seq.terms[c.stabilization_index - 1], c.modulus) == c.stable_residue)
    return false;
  return true;
}

/// terms[i+1] > t*terms[i] + r_abs for every i with k <= i < length-1,
/// k minimal.
struct GrowthCertificate {
  std::uint64_t t = 1;
  std::uint64_t r_abs = 0;
  std::size_t k = 0;

  bool operator==(const GrowthCertificate&) const = default;
};

inline std::optional<GrowthCertificate> try_growth_certificate(const SparseSequence& seq,
                                                               std::uint64_t t,
                                                               std::uint64_t r_abs) {
  if (t == 0) throw std::invalid_argument("growth_certificate: t must be >= 1");
  if (seq.length() < 2)
    throw std::invalid_argument("growth_certificate: sequence must have length >= 2");
  std::size_t k = 0;
  for (std::size_t i = seq.length() - 1; i-- > 0;) {
    if (seq.terms[i + 1] <= t * seq.terms[i] + r_abs) {
      k = i + 1;
      break;
    }
  }
  if (k == seq.length() - 1) return std::nullopt;  // fails at the last available i
  return GrowthCertificate{t, r_abs, k};
}

inline GrowthCertificate growth_certificate(const SparseSequence& seq, std::uint64_t t,
                                            std::uint64_t r_abs) {
  auto cert = try_growth_certificate(seq, t, r_abs);
  if (!cert)
    throw Error("no growth threshold within truncation (t=" + std::to_string(t) +
                ", r_abs=" + std::to_string(r_abs) + ")");
  return *cert;
}

inline bool verify_growth_certificate(const SparseSequence& seq, const GrowthCertificate& c) {
  if (c.k + 1 >= seq.length()) return false;
  for (std::size_t i = c.k; i + 1 < seq.length(); ++i)
    if (seq.terms[i + 1] <= c.t * seq.terms[i] + c.r_abs) return false;
  if (c.k > 0 && seq.terms[c.k] > c.t * seq.terms[c.k - 1] + c.r_abs) return false;
  return true;
}

/// Truncation-relative vaporousness evidence. generator_proved is true only
/// for the Factorial kind, where (n+1)! = (n+1) * n! forces both conditions
/// for the infinite sequence.
struct VaporousReport {
  std::uint64_t max_modulus = 2;
  std::size_t tail_start = 0;
  std::vector<ResidueCertificate> residue_certs;  // moduli 2..max_modulus
  bool all_stabilized = false;
  Rational min_tail_ratio;
  bool generator_proved = false;

  bool operator==(const VaporousReport&) const = default;
};

inline VaporousReport vaporous_report(const SparseSequence& seq, std::uint64_t max_modulus,
                                      std::size_t tail_start) {
  if (max_modulus < 2)
    throw std::invalid_argument("vaporous_report: max_modulus must be >= 2");
  if (tail_start + 1 >= seq.length())
    throw std::invalid_argument("vaporous_report: tail_start must be < length - 1");
  VaporousReport rep;
  rep.max_modulus = max_modulus;
  rep.tail_start = tail_start;
  rep.all_stabilized = true;
  for (std::uint64_t m = 2; m <= max_modulus; ++m) {
    rep.residue_certs.push_back(residue_certificate(seq, m));
    if (rep.residue_certs.back().degenerate) rep.all_stabilized = false;
  }
  rep.min_tail_ratio = Rational(seq.terms[tail_start + 1], seq.terms[tail_start]);
  for (std::size_t n = tail_start + 1; n + 1 < seq.length(); ++n) {
    Rational ratio(seq.terms[n + 1], seq.terms[n]);
    if (ratio < rep.min_tail_ratio) rep.min_tail_ratio = ratio;
  }
  rep.generator_proved = (seq.kind == SeqKind::Factorial);
  return rep;
}

// --- CRT residue steering -------------------------------------------------

/// Stage data for the steering recursion: at stage k (1-based) the shift is
/// the unique multiple of lcm(p_1..p_{k-1}) in [0, lcm(p_1..p_k)) that is
/// congruent to -b modulo p_k.
struct CrtStages {
  std::vector<std::uint64_t> pps;       // p_1..p_K
  std::vector<BigInt> lcm_prefix;       // lcm_prefix[k] = lcm(p_1..p_k), [0] = 1
  std::vector<BigInt> schedule;         // schedule[k] = N_k, [0] = 0

  explicit CrtStages(std::size_t max_stage) {
    pps = max_stage == 0 ? std::vector<std::uint64_t>{} : prime_powers(max_stage);
    lcm_prefix.push_back(1);
    schedule.push_back(0);
    for (std::size_t k = 1; k <= max_stage; ++k) {
      lcm_prefix.push_back(boost::multiprecision::lcm(lcm_prefix[k - 1], BigInt(pps[k - 1])));
      schedule.push_back(schedule[k - 1] + lcm_prefix[k] - 1);
    }
  }
};

/// The inner shift r for stage k: 0 <= r < lcm(p_1..p_k), r ≡ -b (mod p_k),
/// r ≡ 0 (mod p_t) for t < k. Requires b ≡ 0 (mod p_t) for all t < k.
inline BigInt crt_step_shift(const BigInt& b, std::size_t k, const CrtStages& st) {
  const BigInt& prev = st.lcm_prefix[k - 1];
  const std::uint64_t p = st.pps[k - 1];
  BigInt candidates = st.lcm_prefix[k] / prev;
  for (BigInt s = 0; s < candidates; ++s) {
    BigInt r = prev * s;
    if ((b + r) % p == 0) return r;
  }
  throw Error("crt_step_shift: no admissible shift (input not 0 mod earlier stages?)");
}

/// Largest k with n >= N_k.
inline std::size_t crt_stage_count(std::size_t n, const CrtStages& st) {
  std::size_t k = 0;
  while (k + 1 < st.schedule.size() && st.schedule[k + 1] <= n) ++k;
  return k;
}

/// The slow-shift steering: a_n = b_{n,k_n} with k_n = max{k : n >= N_k}.
/// Guarantees |a_n - b_n| <= N_{k_n} <= n and a_n ≡ 0 (mod p_t) for t <= k_n.
/// The output is a plain integer list; it need not be strictly increasing.
inline std::vector<BigInt> crt_steer(const std::vector<BigInt>& base) {
  if (base.empty()) throw std::invalid_argument("crt_steer: base must be nonempty");
  // Grow the stage table until N_K exceeds the largest index; then every
  // k_n is strictly below K and the table covers all inner steps.
  std::size_t stages = 4;
  CrtStages st(stages);
  while (st.schedule.back() <= base.size() - 1) st = CrtStages(stages += 2);
  std::vector<BigInt> out;
  out.reserve(base.size());
  for (std::size_t n = 0; n < base.size(); ++n) {
    std::size_t k_n = crt_stage_count(n, st);
    BigInt cur = base[n];
    for (std::size_t k = 1; k <= k_n; ++k) cur += crt_step_shift(cur, k, st);
    out.push_back(cur);
  }
  return out;
}

}  // namespace vaporlab
