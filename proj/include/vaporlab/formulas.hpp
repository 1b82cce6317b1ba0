#pragma once

#include <vaporlab/bigint.hpp>
#include <vaporlab/sequences.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace vaporlab {

/// x_1 + ... + x_m = y_1 + ... + y_n + r
struct LinearEq {
  std::uint32_t m = 1;
  std::uint32_t n = 1;
  std::int64_t r = 0;

  bool operator==(const LinearEq&) const = default;
};

/// x ≡ residue (mod modulus)
struct Congruence {
  std::uint64_t modulus = 2;
  std::uint64_t residue = 0;

  bool operator==(const Congruence&) const = default;
};

using AtomicFormula = std::variant<LinearEq, Congruence>;

inline void check_formula(const AtomicFormula& f) {
  if (const auto* le = std::get_if<LinearEq>(&f)) {
    if (le->m == 0 || le->n == 0)
      throw std::invalid_argument("lineq: m and n must be >= 1");
    if (le->m + le->n > 16)
      throw std::invalid_argument(
          "lineq: arity m+n above 16 is outside the exhaustive-search range");
  } else {
    const auto& c = std::get<Congruence>(f);
    if (c.modulus < 2) throw std::invalid_argument("cong: modulus must be >= 2");
    if (c.residue >= c.modulus)
      throw std::invalid_argument("cong: residue must lie in [0, modulus)");
  }
}

inline std::size_t formula_arity(const AtomicFormula& f) {
  if (const auto* le = std::get_if<LinearEq>(&f)) return le->m + le->n;
  return 1;
}

inline std::string format_formula(const AtomicFormula& f) {
  std::ostringstream os;
  if (const auto* le = std::get_if<LinearEq>(&f))
    os << "lineq " << le->m << " " << le->n << " " << le->r;
  else {
    const auto& c = std::get<Congruence>(f);
    os << "cong " << c.modulus << " " << c.residue;
  }
  return os.str();
}

/// Compact text syntax: `lineq m n r` or `cong m r`.
inline AtomicFormula parse_formula(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  is >> head;
  AtomicFormula f;
  if (head == "lineq") {
    LinearEq le;
    if (!(is >> le.m >> le.n >> le.r)) throw Error("bad lineq syntax: '" + text + "'");
    f = le;
  } else if (head == "cong") {
    Congruence c;
    if (!(is >> c.modulus >> c.residue)) throw Error("bad cong syntax: '" + text + "'");
    f = c;
  } else {
    throw Error("unknown formula head '" + head + "' (expected lineq or cong)");
  }
  std::string rest;
  if (is >> rest) throw Error("trailing tokens in formula: '" + text + "'");
  check_formula(f);
  return f;
}

inline bool eval(const AtomicFormula& f, std::span<const BigInt> xs,
                 std::span<const BigInt> ys) {
  if (const auto* le = std::get_if<LinearEq>(&f)) {
    if (xs.size() != le->m || ys.size() != le->n)
      throw std::invalid_argument("eval: arity mismatch for " + format_formula(f));
    BigInt lhs = 0, rhs = le->r;
    for (const BigInt& x : xs) lhs += x;
    for (const BigInt& y : ys) rhs += y;
    return lhs == rhs;
  }
  const auto& c = std::get<Congruence>(f);
  if (xs.size() != 1 || !ys.empty())
    throw std::invalid_argument("eval: arity mismatch for " + format_formula(f));
  return residue_of(xs[0], c.modulus) == c.residue;
}

enum class TupleMode { Increasing, Injective };

inline const char* mode_name(TupleMode m) {
  return m == TupleMode::Increasing ? "increasing" : "injective";
}

namespace detail {

/// Visits every strictly increasing `size`-tuple of indices from [lo, hi).
template <class Fn>
void for_each_combination(std::size_t lo, std::size_t hi, std::size_t size, Fn&& fn) {
  if (size == 0 || lo + size > hi) return;
  std::vector<std::size_t> c(size);
  for (std::size_t i = 0; i < size; ++i) c[i] = lo + i;
  while (true) {
    fn(c);
    std::size_t i = size;
    while (i-- > 0) {
      if (c[i] + (size - i) < hi) {
        ++c[i];
        for (std::size_t j = i + 1; j < size; ++j) c[j] = c[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

/// Truth values taken by a linear equation over tuples from the index window
/// (k, length), under the given tuple mode. In injective mode every way of
/// splitting a combination into the x-group and y-group is evaluated; in
/// increasing mode the first m indices are the x-group.
struct TruthSpread {
  bool any_true = false;
  bool any_false = false;
};

inline TruthSpread lineq_truth_spread(const SparseSequence& seq, const LinearEq& le,
                                      std::size_t min_index, TupleMode mode) {
  TruthSpread spread;
  const std::size_t v = le.m + le.n;
  const auto& t = seq.terms;
  for_each_combination(min_index, seq.length(), v, [&](const std::vector<std::size_t>& c) {
    if (mode == TupleMode::Increasing) {
      BigInt lhs = 0, rhs = le.r;
      for (std::size_t i = 0; i < le.m; ++i) lhs += t[c[i]];
      for (std::size_t i = le.m; i < v; ++i) rhs += t[c[i]];
      (lhs == rhs ? spread.any_true : spread.any_false) = true;
      return;
    }
    // Injective: sums are symmetric within each group, so each subset choice
    // of x-positions covers all ordered tuples with that split.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << v); ++mask) {
      if (static_cast<std::uint32_t>(std::popcount(mask)) != le.m) continue;
      BigInt lhs = 0, rhs = le.r;
      for (std::size_t i = 0; i < v; ++i)
        ((mask >> i) & 1 ? lhs : rhs) += t[c[i]];
      (lhs == rhs ? spread.any_true : spread.any_false) = true;
    }
  });
  return spread;
}

}  // namespace detail

/// Result of computing the eventual-indiscernibility threshold k_phi of a
/// formula against a sequence truncation. For linear equations k_phi is the
/// growth-certificate threshold and the tail value is false (verified by
/// exhaustive scan); for congruences it is the residue stabilization index.
struct ThresholdReport {
  AtomicFormula formula;
  bool ok = false;
  std::size_t k_phi = 0;
  bool tail_value = false;
  bool verified = false;
  std::string failure;

  bool operator==(const ThresholdReport&) const = default;
};

inline ThresholdReport threshold(const SparseSequence& seq, const AtomicFormula& f) {
  check_formula(f);
  ThresholdReport rep;
  rep.formula = f;
  if (const auto* le = std::get_if<LinearEq>(&f)) {
    std::uint64_t t = std::max(le->m, le->n);
    std::uint64_t r_abs = le->r < 0 ? 0ull - static_cast<std::uint64_t>(le->r)
                                    : static_cast<std::uint64_t>(le->r);
    std::optional<GrowthCertificate> cert;
    if (seq.length() >= 2) cert = try_growth_certificate(seq, t, r_abs);
    if (!cert) {
      rep.failure = "no growth threshold within truncation";
      return rep;
    }
    rep.ok = true;
    rep.k_phi = cert->k;
    rep.tail_value = false;
    auto spread = detail::lineq_truth_spread(seq, *le, rep.k_phi + 1, TupleMode::Injective);
    if (spread.any_true)
      throw Error("falsified: injective solution of " + format_formula(f) +
                  " above threshold k=" + std::to_string(rep.k_phi));
    rep.verified = true;
    return rep;
  }
  const auto& c = std::get<Congruence>(f);
  auto cert = residue_certificate(seq, c.modulus);
  if (cert.degenerate) {
    rep.failure = "no residue stabilization within truncation";
    return rep;
  }
  rep.ok = true;
  rep.k_phi = cert.stabilization_index;
  rep.tail_value = (cert.stable_residue == c.residue);
  rep.verified = true;
  return rep;
}

struct EiEntry {
  AtomicFormula formula;
  bool ok = false;
  std::size_t k_phi = 0;
  bool tail_value = false;
  std::string failure;

  bool operator==(const EiEntry&) const = default;
};

struct IndiscernibilityReport {
  TupleMode mode = TupleMode::Injective;
  std::vector<EiEntry> entries;
  bool all_ok = false;

  bool operator==(const IndiscernibilityReport&) const = default;
};

/// Per formula: the certificate-derived threshold k such that all
/// mode-conforming tuples from indices > k agree, with the agreement
/// re-verified by exhaustive scan over the truncation.
inline IndiscernibilityReport ei_check(const SparseSequence& seq,
                                       const std::vector<AtomicFormula>& formulas,
                                       TupleMode mode) {
  if (formulas.empty()) throw std::invalid_argument("ei_check: formulas must be nonempty");
  IndiscernibilityReport rep;
  rep.mode = mode;
  rep.all_ok = true;
  for (const auto& f : formulas) {
    ThresholdReport th = threshold(seq, f);
    EiEntry e;
    e.formula = f;
    if (!th.ok) {
      e.failure = th.failure;
      rep.all_ok = false;
      rep.entries.push_back(std::move(e));
      continue;
    }
    e.ok = true;
    e.k_phi = th.k_phi;
    e.tail_value = th.tail_value;
    if (const auto* le = std::get_if<LinearEq>(&f)) {
      auto spread = detail::lineq_truth_spread(seq, *le, e.k_phi + 1, mode);
      if (spread.any_true)
        throw Error("falsified: tuples of " + format_formula(f) +
                    " disagree above k=" + std::to_string(e.k_phi));
    } else {
      const auto& c = std::get<Congruence>(f);
      for (std::size_t i = e.k_phi + 1; i < seq.length(); ++i)
        if ((residue_of(seq.terms[i], c.modulus) == c.residue) != e.tail_value)
          throw Error("falsified: congruence value flips above k=" +
                      std::to_string(e.k_phi));
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// --- equality patterns ------------------------------------------------------

/// A set partition of the variable positions 0..arity-1; blocks are sorted
/// internally and ordered by their minimal position.
using Pattern = std::vector<std::vector<std::size_t>>;

/// All set partitions of {0..arity-1} in restricted-growth-string order.
inline std::vector<Pattern> all_patterns(std::size_t arity) {
  std::vector<Pattern> out;
  std::vector<std::size_t> label(arity, 0);
  auto emit = [&]() {
    std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
    Pattern p(blocks);
    for (std::size_t i = 0; i < arity; ++i) p[label[i]].push_back(i);
    out.push_back(std::move(p));
  };
  auto rec = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
    if (pos == arity) {
      emit();
      return;
    }
    for (std::size_t l = 0; l <= used; ++l) {
      label[pos] = l;
      self(self, pos + 1, std::max(used, l + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Human-readable block labels, e.g. "x1=y2 | y1" for lineq patterns.
inline std::string pattern_label(const AtomicFormula& f, const Pattern& p) {
  std::size_t m = 0;
  if (const auto* le = std::get_if<LinearEq>(&f)) m = le->m;
  auto name = [&](std::size_t pos) {
    std::ostringstream os;
    if (std::holds_alternative<Congruence>(f))
      os << "x";
    else if (pos < m)
      os << "x" << pos + 1;
    else
      os << "y" << pos - m + 1;
    return os.str();
  };
  std::ostringstream os;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (b) os << " | ";
    for (std::size_t i = 0; i < p[b].size(); ++i) {
      if (i) os << "=";
      os << name(p[b][i]);
    }
  }
  return os.str();
}

struct PatternEntry {
  Pattern pattern;
  bool value = false;

  bool operator==(const PatternEntry&) const = default;
};

struct PatternInstability {
  Pattern pattern;
  std::vector<std::size_t> true_tuple;   // index per variable position
  std::vector<std::size_t> false_tuple;

  bool operator==(const PatternInstability&) const = default;
};

struct PatternTable {
  AtomicFormula formula;
  std::size_t k = 0;
  bool stable = false;
  std::vector<PatternEntry> entries;            // realizable, stable patterns
  std::vector<Pattern> unrealizable;            // too few indices above k
  std::optional<PatternInstability> unstable;   // first unstable pattern

  bool operator==(const PatternTable&) const = default;
};

namespace detail {

struct PatternOutcome {
  bool stable = false;
  bool value = false;
  // lex-first witnesses as index-per-block assignments
  std::optional<std::vector<std::size_t>> true_witness;
  std::optional<std::vector<std::size_t>> false_witness;
};

/// Decides whether sum_b coeff[b]*terms[idx_b] == target has constant truth
/// over injective block assignments with indices in [lo, length), and finds
/// lex-first witnesses of each truth value when both occur.
inline PatternOutcome pattern_outcome(const SparseSequence& seq,
                                      const std::vector<std::int64_t>& coeff,
                                      const BigInt& target, std::size_t lo) {
  const std::size_t p = coeff.size();
  const std::size_t len = seq.length();
  const auto& t = seq.terms;
  PatternOutcome out;

  constexpr std::uint64_t kEnumBudget = 200000;
  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < p && assignments <= kEnumBudget; ++i)
    assignments *= static_cast<std::uint64_t>(len - lo - i);

  std::vector<std::size_t> pick(p);
  std::vector<bool> used(len, false);

  if (assignments <= kEnumBudget) {
    // Full lexicographic enumeration.
    bool done = false;
    auto rec = [&](auto&& self, std::size_t b, const BigInt& partial) -> void {
      if (done) return;
      if (b == p) {
        bool val = (partial == target);
        if (val && !out.true_witness) out.true_witness = pick;
        if (!val && !out.false_witness) out.false_witness = pick;
        if (out.true_witness && out.false_witness) done = true;
        return;
      }
      for (std::size_t i = lo; i < len && !done; ++i) {
        if (used[i]) continue;
        used[i] = true;
        pick[b] = i;
        self(self, b + 1, partial + coeff[b] * t[i]);
        used[i] = false;
      }
    };
    rec(rec, 0, BigInt(0));
  } else {
    bool all_zero = std::all_of(coeff.begin(), coeff.end(),
                                [](std::int64_t c) { return c == 0; });
    if (all_zero) {
      out.stable = true;
      out.value = (target == 0);
      return out;
    }
    // Pruned search for the lex-first satisfying assignment.
    std::vector<BigInt> suf_min(p + 1, 0), suf_max(p + 1, 0);
    for (std::size_t b = p; b-- > 0;) {
      BigInt cmin = coeff[b] > 0 ? coeff[b] * t[lo] : coeff[b] * t[len - 1];
      BigInt cmax = coeff[b] > 0 ? coeff[b] * t[len - 1] : coeff[b] * t[lo];
      suf_min[b] = suf_min[b + 1] + cmin;
      suf_max[b] = suf_max[b + 1] + cmax;
    }
    bool found = false;
    auto dfs = [&](auto&& self, std::size_t b, const BigInt& partial) -> void {
      if (found) return;
      if (b == p) {
        if (partial == target) {
          out.true_witness = pick;
          found = true;
        }
        return;
      }
      if (partial + suf_min[b] > target || partial + suf_max[b] < target) return;
      for (std::size_t i = lo; i < len && !found; ++i) {
        if (used[i]) continue;
        used[i] = true;
        pick[b] = i;
        self(self, b + 1, partial + coeff[b] * t[i]);
        used[i] = false;
      }
    };
    dfs(dfs, 0, BigInt(0));
    if (!out.true_witness) {
      out.stable = true;
      out.value = false;
      return out;
    }
    // A non-satisfying assignment exists because some coefficient is nonzero
    // and there are more available indices than blocks; scan lexicographically
    // until one turns up.
    bool done = false;
    auto rec = [&](auto&& self, std::size_t b, const BigInt& partial) -> void {
      if (done) return;
      if (b == p) {
        if (partial != target) {
          out.false_witness = pick;
          done = true;
        }
        return;
      }
      for (std::size_t i = lo; i < len && !done; ++i) {
        if (used[i]) continue;
        used[i] = true;
        pick[b] = i;
        self(self, b + 1, partial + coeff[b] * t[i]);
        used[i] = false;
      }
    };
    rec(rec, 0, BigInt(0));
  }

  if (out.true_witness && out.false_witness) {
    out.stable = false;
  } else {
    out.stable = true;
    out.value = out.true_witness.has_value();
  }
  return out;
}

}  // namespace detail

/// Maps each equality pattern of the formula's variable positions to the
/// common truth value of the formula over tuples realizing the pattern with
/// all indices >= k. Unstable patterns (two realizing tuples disagreeing,
/// i.e. k too small) are reported with a counterexample pair.
inline PatternTable equality_pattern_table(const SparseSequence& seq,
                                           const AtomicFormula& f, std::size_t k) {
  check_formula(f);
  if (k >= seq.length())
    throw std::invalid_argument("equality_pattern_table: k must be < length");
  if (formula_arity(f) > 10)
    throw std::invalid_argument(
        "equality_pattern_table: arity above 10 enumerates too many partitions");
  PatternTable table;
  table.formula = f;
  table.k = k;
  table.stable = true;

  const std::size_t arity = formula_arity(f);
  const std::size_t avail = seq.length() - k;

  for (const Pattern& p : all_patterns(arity)) {
    if (p.size() > avail) {
      table.unrealizable.push_back(p);
      continue;
    }
    detail::PatternOutcome outcome;
    if (const auto* le = std::get_if<LinearEq>(&f)) {
      std::vector<std::int64_t> coeff(p.size(), 0);
      for (std::size_t b = 0; b < p.size(); ++b)
        for (std::size_t pos : p[b])
          coeff[b] += pos < le->m ? 1 : -1;
      outcome = detail::pattern_outcome(seq, coeff, BigInt(le->r), k);
    } else {
      const auto& c = std::get<Congruence>(f);
      for (std::size_t i = k; i < seq.length(); ++i) {
        bool val = residue_of(seq.terms[i], c.modulus) == c.residue;
        if (val && !outcome.true_witness) outcome.true_witness = {i};
        if (!val && !outcome.false_witness) outcome.false_witness = {i};
      }
      outcome.stable = !(outcome.true_witness && outcome.false_witness);
      outcome.value = outcome.true_witness.has_value();
    }
    if (outcome.stable) {
      table.entries.push_back({p, outcome.value});
    } else if (table.stable) {
      table.stable = false;
      // Expand block witnesses to per-position index tuples.
      auto expand = [&](const std::vector<std::size_t>& by_block) {
        std::vector<std::size_t> tuple(arity);
        for (std::size_t b = 0; b < p.size(); ++b)
          for (std::size_t pos : p[b]) tuple[pos] = by_block[b];
        return tuple;
      };
      table.unstable = PatternInstability{p, expand(*outcome.true_witness),
                                          expand(*outcome.false_witness)};
    }
  }
  return table;
}

// --- eventually indiscernible subsequence extraction ------------------------

struct ExtractResult {
  std::vector<std::size_t> indices;  // into the input base list, ascending
  std::vector<BigInt> values;

  bool operator==(const ExtractResult&) const = default;
};

namespace detail {

/// True iff all injective tuples drawn from the given indices agree on f.
/// Bumps `evals` per tuple evaluation and throws once the budget is spent.
inline bool tail_agrees(const std::vector<BigInt>& base,
                        const std::vector<std::size_t>& indices, const AtomicFormula& f,
                        std::uint64_t& evals, std::uint64_t budget) {
  const std::size_t arity = formula_arity(f);
  if (indices.size() < arity) return true;
  bool any_true = false, any_false = false;
  if (const auto* c = std::get_if<Congruence>(&f)) {
    for (std::size_t idx : indices) {
      if (++evals > budget) throw Error("extraction work budget exceeded");
      (residue_of(base[idx], c->modulus) == c->residue ? any_true : any_false) = true;
      if (any_true && any_false) return false;
    }
    return true;
  }
  const auto& le = std::get<LinearEq>(f);
  const std::size_t v = arity;
  bool disagree = false;
  for_each_combination(0, indices.size(), v, [&](const std::vector<std::size_t>& c) {
    if (disagree) return;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << v) && !disagree; ++mask) {
      if (static_cast<std::uint32_t>(std::popcount(mask)) != le.m) continue;
      if (++evals > budget) throw Error("extraction work budget exceeded");
      BigInt lhs = 0, rhs = le.r;
      for (std::size_t i = 0; i < v; ++i)
        ((mask >> i) & 1 ? lhs : rhs) += base[indices[c[i]]];
      (lhs == rhs ? any_true : any_false) = true;
      if (any_true && any_false) disagree = true;
    }
  });
  return !disagree;
}

}  // namespace detail

/// Best-effort Ramsey-style extraction: walking from the end of the input,
/// greedily keep indices whose addition leaves all injective tuples in
/// agreement for the current formula; formulas are processed in order, each
/// refining the previous selection. The result is the last `target_tail`
/// surviving indices.
inline ExtractResult extract_ei_subsequence(const std::vector<BigInt>& base,
                                            const std::vector<AtomicFormula>& formulas,
                                            std::size_t target_tail,
                                            std::uint64_t budget = 20'000'000) {
  if (formulas.empty())
    throw std::invalid_argument("extract_ei_subsequence: formulas must be nonempty");
  if (base.empty()) throw std::invalid_argument("extract_ei_subsequence: base is empty");
  for (std::size_t i = 0; i + 1 < base.size(); ++i)
    if (base[i] >= base[i + 1])
      throw std::invalid_argument("extract_ei_subsequence: base not strictly increasing");
  std::size_t max_arity = 0;
  for (const auto& f : formulas) {
    check_formula(f);
    max_arity = std::max(max_arity, formula_arity(f));
  }
  if (target_tail < max_arity)
    throw std::invalid_argument(
        "extract_ei_subsequence: target_tail must be >= the largest formula arity");

  std::uint64_t evals = 0;
  std::vector<std::size_t> selection(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) selection[i] = i;

  for (const auto& f : formulas) {
    std::vector<std::size_t> kept;  // collected back-to-front
    for (std::size_t pos = selection.size(); pos-- > 0;) {
      kept.push_back(selection[pos]);
      std::vector<std::size_t> trial(kept.rbegin(), kept.rend());
      if (!detail::tail_agrees(base, trial, f, evals, budget)) kept.pop_back();
    }
    selection.assign(kept.rbegin(), kept.rend());
  }

  if (selection.size() < target_tail)
    throw Error("no qualifying subsequence of requested tail length within input");

  ExtractResult res;
  res.indices.assign(selection.end() - target_tail, selection.end());
  for (std::size_t idx : res.indices) res.values.push_back(base[idx]);
  for (const auto& f : formulas)
    if (!detail::tail_agrees(base, res.indices, f, evals, budget))
      throw Error("internal: extracted tail fails revalidation");
  return res;
}

}  // namespace vaporlab
