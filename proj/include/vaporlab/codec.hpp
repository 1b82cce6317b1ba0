#pragma once

#include <vaporlab/bigint.hpp>
#include <vaporlab/sequences.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vaporlab {

/// A finite simple graph on the indices of a sequence truncation.
/// Edges are stored as unordered pairs (u < v); input edge lists are
/// symmetrized and de-duplicated, loops are rejected.
struct Graph {
  std::size_t vertex_count = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  bool operator==(const Graph&) const = default;

  static Graph from_edges(std::size_t vertex_count,
                          const std::vector<std::pair<std::size_t, std::size_t>>& list) {
    Graph g;
    g.vertex_count = vertex_count;
    for (auto [u, v] : list) {
      if (u == v) throw Error("loop edge rejected: " + std::to_string(u));
      if (u >= vertex_count || v >= vertex_count)
        throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) +
                                    " " + std::to_string(v));
      g.edges.insert({std::min(u, v), std::max(u, v)});
    }
    return g;
  }
};

/// A = Q ∪ {a+b : (a,b) ∈ E}. Collisions (a sum landing on a Q element) are
/// permitted and recorded.
struct EncodedSet {
  std::vector<BigInt> values;
  std::vector<BigInt> q_values;
  std::vector<BigInt> sum_values;
  std::vector<BigInt> collisions;

  bool operator==(const EncodedSet&) const = default;
};

inline EncodedSet encode(const SparseSequence& seq, const Graph& g) {
  if (g.vertex_count > seq.length())
    throw std::invalid_argument("graph vertex set exceeds sequence truncation");
  EncodedSet enc;
  enc.q_values = seq.terms;
  std::set<BigInt> sums;
  for (const auto& [u, v] : g.edges) sums.insert(seq.terms[u] + seq.terms[v]);
  enc.sum_values.assign(sums.begin(), sums.end());
  std::set<BigInt> all(seq.terms.begin(), seq.terms.end());
  for (const BigInt& s : enc.sum_values) {
    if (all.contains(s)) enc.collisions.push_back(s);
    all.insert(s);
  }
  enc.values.assign(all.begin(), all.end());
  return enc;
}

using ValuePair = std::pair<BigInt, BigInt>;

struct DecodeExceptions {
  std::vector<BigInt> q_missing;
  std::vector<BigInt> q_spurious;
  std::vector<ValuePair> e_missing;
  std::vector<ValuePair> e_spurious;

  bool all_empty() const {
    return q_missing.empty() && q_spurious.empty() && e_missing.empty() &&
           e_spurious.empty();
  }
  bool operator==(const DecodeExceptions&) const = default;
};

/// Growth-certificate thresholds behind the decoder's exception bounds:
/// x = y1+..+yn (n = 2,3,4) for spurious sums hitting Q, and
/// x1+x2 = y1(+y2) for spurious edges.
struct DecodeThresholds {
  struct Entry {
    std::uint32_t m = 1;
    std::uint32_t n = 1;
    bool available = false;
    std::size_t k = 0;
    BigInt bound_value;  // terms[k]

    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> entries;

  bool operator==(const DecodeThresholds&) const = default;
};

struct DecodeReport {
  std::vector<BigInt> q_hat;
  std::vector<ValuePair> e_hat;
  std::vector<BigInt> flagged;  // elements of A that are sums of two distinct A-elements
  std::optional<DecodeExceptions> exceptions;
  std::optional<DecodeThresholds> thresholds;
  std::vector<std::string> falsifications;

  bool operator==(const DecodeReport&) const = default;
};

namespace detail {

inline bool is_distinct_pair_sum(const std::vector<BigInt>& sorted, const BigInt& x) {
  std::size_t lo = 0, hi = sorted.size();
  while (lo + 1 < hi) {
    // hi is exclusive; compare sorted[lo] + sorted[hi-1] against x
    const BigInt s = sorted[lo] + sorted[hi - 1];
    if (s == x) return true;
    if (s < x)
      ++lo;
    else
      --hi;
  }
  return false;
}

inline DecodeThresholds decode_thresholds(const SparseSequence& seq) {
  DecodeThresholds th;
  const std::pair<std::uint32_t, std::uint32_t> eqs[] = {
      {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}};
  for (auto [m, n] : eqs) {
    DecodeThresholds::Entry e;
    e.m = m;
    e.n = n;
    if (seq.length() >= 2) {
      if (auto cert = try_growth_certificate(seq, std::max(m, n), 0)) {
        e.available = true;
        e.k = cert->k;
        e.bound_value = seq.terms[cert->k];
      }
    }
    th.entries.push_back(std::move(e));
  }
  return th;
}

}  // namespace detail

/// Definable decoding of a unary set: Q̂ = elements that are not sums of two
/// distinct elements of A, Ê = pairs of Q̂ elements whose sum lies in A.
/// Never consults the ground truth for Q̂/Ê; the truth only feeds the
/// exception accounting.
inline DecodeReport decode(const std::vector<BigInt>& values,
                           const std::optional<std::pair<SparseSequence, Graph>>& truth =
                               std::nullopt) {
  std::vector<BigInt> a = values;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (!a.empty() && a.front() < 1) throw std::invalid_argument("decode: values must be positive");

  DecodeReport rep;
  for (const BigInt& x : a) {
    if (detail::is_distinct_pair_sum(a, x))
      rep.flagged.push_back(x);
    else
      rep.q_hat.push_back(x);
  }
  for (std::size_t i = 0; i < rep.q_hat.size(); ++i)
    for (std::size_t j = i + 1; j < rep.q_hat.size(); ++j) {
      BigInt s = rep.q_hat[i] + rep.q_hat[j];
      if (std::binary_search(a.begin(), a.end(), s))
        rep.e_hat.push_back({rep.q_hat[i], rep.q_hat[j]});
    }

  if (truth) {
    const auto& [seq, g] = *truth;
    std::set<BigInt> q_true(seq.terms.begin(), seq.terms.end());
    std::set<ValuePair> e_true;
    for (const auto& [u, v] : g.edges) {
      BigInt a0 = seq.terms[u], b0 = seq.terms[v];
      if (b0 < a0) std::swap(a0, b0);
      e_true.insert({a0, b0});
    }
    std::set<BigInt> q_dec(rep.q_hat.begin(), rep.q_hat.end());
    std::set<ValuePair> e_dec(rep.e_hat.begin(), rep.e_hat.end());
    DecodeExceptions ex;
    for (const BigInt& q : q_true)
      if (!q_dec.contains(q)) ex.q_missing.push_back(q);
    for (const BigInt& q : q_dec)
      if (!q_true.contains(q)) ex.q_spurious.push_back(q);
    for (const auto& e : e_true)
      if (!e_dec.contains(e)) ex.e_missing.push_back(e);
    for (const auto& e : e_dec)
      if (!e_true.contains(e)) ex.e_spurious.push_back(e);
    rep.exceptions = std::move(ex);
    rep.thresholds = detail::decode_thresholds(seq);
  }
  return rep;
}

/// encode then decode against the ground truth, cross-checking the exception
/// sets against the growth-certificate bounds; violations are reported in
/// `falsifications` rather than silently accepted.
inline DecodeReport roundtrip(const SparseSequence& seq, const Graph& g) {
  EncodedSet enc = encode(seq, g);
  DecodeReport rep = decode(enc.values, std::make_pair(seq, g));
  if (!rep.thresholds) return rep;

  BigInt q_bound = -1, e_bound = -1;
  bool q_avail = false, e_avail = false;
  for (const auto& e : rep.thresholds->entries) {
    if (!e.available) continue;
    if (e.m == 1) {
      q_avail = true;
      q_bound = std::max(q_bound, e.bound_value);
    } else {
      e_avail = true;
      e_bound = std::max(e_bound, e.bound_value);
    }
  }
  if (q_avail)
    for (const BigInt& q : rep.exceptions->q_missing)
      if (q > q_bound)
        rep.falsifications.push_back("q_missing value " + q.str() +
                                     " exceeds growth bound " + q_bound.str());
  if (e_avail)
    for (const auto& [x, y] : rep.exceptions->e_spurious)
      if (std::min(x, y) > e_bound)
        rep.falsifications.push_back("e_spurious pair (" + x.str() + "," + y.str() +
                                     ") has no endpoint below growth bound " +
                                     e_bound.str());
  return rep;
}

/// Sums of all fold-size multisets of the truncation's terms.
inline std::vector<BigInt> sumset(const SparseSequence& seq, std::uint32_t fold) {
  if (fold < 2) throw std::invalid_argument("sumset: fold must be >= 2");
  std::set<BigInt> sums;
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from, BigInt partial) -> void {
    if (pos == fold) {
      sums.insert(std::move(partial));
      return;
    }
    for (std::size_t i = from; i < seq.length(); ++i)
      self(self, pos + 1, i, partial + seq.terms[i]);
  };
  rec(rec, 0, 0, BigInt(0));
  return {sums.begin(), sums.end()};
}

/// The U-rank-n building blocks: Q = {k! : n <= k < n+count},
/// B = {sum(S) : S a size-n multiset over Q with max(S) > n!}, A = B ∪ Q.
struct UrankConstruction {
  std::uint64_t n = 1;
  std::uint64_t count = 1;
  std::vector<BigInt> q;
  std::vector<BigInt> b;
  std::vector<BigInt> a;
  std::vector<BigInt> b_cap_q;
  bool degenerate = false;  // n = 1 collapses the construction

  bool operator==(const UrankConstruction&) const = default;
};

inline UrankConstruction urank_construction(std::uint64_t n, std::uint64_t count) {
  if (n == 0) throw std::invalid_argument("urank_construction: n must be >= 1");
  if (count == 0) throw std::invalid_argument("urank_construction: count must be >= 1");
  UrankConstruction res;
  res.n = n;
  res.count = count;
  res.degenerate = (n == 1);
  BigInt f = factorial_big(n);
  const BigInt nfact = f;
  for (std::uint64_t k = n; k < n + count; ++k) {
    res.q.push_back(f);
    f *= k + 1;
  }
  std::set<BigInt> b;
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from, BigInt partial,
                 bool above) -> void {
    if (pos == n) {
      if (above) b.insert(std::move(partial));
      return;
    }
    for (std::size_t i = from; i < res.q.size(); ++i)
      self(self, pos + 1, i, partial + res.q[i], above || res.q[i] > nfact);
  };
  rec(rec, 0, 0, BigInt(0), false);
  res.b.assign(b.begin(), b.end());
  std::set<BigInt> a(b);
  for (const BigInt& q : res.q) a.insert(q);
  res.a.assign(a.begin(), a.end());
  std::set<BigInt> qs(res.q.begin(), res.q.end());
  for (const BigInt& v : res.b)
    if (qs.contains(v)) res.b_cap_q.push_back(v);
  return res;
}

struct InjectivityResult {
  bool injective = true;
  // lexicographically first colliding pair of value multisets
  std::optional<std::pair<std::vector<BigInt>, std::vector<BigInt>>> collision;

  bool operator==(const InjectivityResult&) const = default;
};

/// True iff all size-n multiset sums over the truncation are pairwise
/// distinct.
inline InjectivityResult multiset_sum_injectivity(const SparseSequence& seq,
                                                  std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("multiset_sum_injectivity: n must be >= 1");
  std::map<BigInt, std::vector<std::vector<std::size_t>>> by_sum;
  std::vector<std::size_t> pick(n);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from, BigInt partial) -> void {
    if (pos == n) {
      auto& bucket = by_sum[partial];
      if (bucket.size() < 2) bucket.push_back(pick);
      return;
    }
    for (std::size_t i = from; i < seq.length(); ++i) {
      pick[pos] = i;
      self(self, pos + 1, i, partial + seq.terms[i]);
    }
  };
  rec(rec, 0, 0, BigInt(0));

  InjectivityResult res;
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> best;
  for (const auto& [sum, buckets] : by_sum) {
    if (buckets.size() < 2) continue;
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> cand{buckets[0],
                                                                       buckets[1]};
    if (!best || cand < *best) best = std::move(cand);
  }
  if (best) {
    res.injective = false;
    auto values = [&](const std::vector<std::size_t>& idxs) {
      std::vector<BigInt> v;
      for (std::size_t i : idxs) v.push_back(seq.terms[i]);
      return v;
    };
    res.collision = {values(best->first), values(best->second)};
  }
  return res;
}

}  // namespace vaporlab
