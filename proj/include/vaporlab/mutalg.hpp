#pragma once

#include <vaporlab/bigint.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vaporlab {

/// An explicit n-ary relation on a finite integer universe.
struct FiniteRelation {
  std::vector<std::int64_t> universe;  // sorted, unique
  std::size_t arity = 1;
  std::vector<std::vector<std::int64_t>> tuples;  // sorted, unique

  bool operator==(const FiniteRelation&) const = default;

  static FiniteRelation make(std::vector<std::int64_t> universe, std::size_t arity,
                             std::vector<std::vector<std::int64_t>> tuples) {
    if (arity == 0) throw std::invalid_argument("relation arity must be >= 1");
    FiniteRelation r;
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    r.universe = std::move(universe);
    r.arity = arity;
    std::set<std::int64_t> uni(r.universe.begin(), r.universe.end());
    for (auto& t : tuples) {
      if (t.size() != arity)
        throw std::invalid_argument("tuple arity mismatch in relation");
      for (std::int64_t e : t)
        if (!uni.contains(e))
          throw std::invalid_argument("tuple entry " + std::to_string(e) +
                                      " not in universe");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    r.tuples = std::move(tuples);
    return r;
  }

  /// Symmetric and irreflexive binary relation, i.e. a graph relation.
  bool is_graph_relation() const {
    if (arity != 2) return false;
    std::set<std::vector<std::int64_t>> set(tuples.begin(), tuples.end());
    for (const auto& t : tuples) {
      if (t[0] == t[1]) return false;
      if (!set.contains({t[1], t[0]})) return false;
    }
    return true;
  }

  /// Graph of a total function from the universe to itself.
  bool is_function_graph() const {
    if (arity != 2) return false;
    std::map<std::int64_t, std::size_t> outdeg;
    for (const auto& t : tuples) ++outdeg[t[0]];
    for (std::int64_t u : universe)
      if (outdeg[u] != 1) return false;
    return true;
  }
};

struct MaWitness {
  std::size_t position = 0;
  std::int64_t element = 0;

  bool operator==(const MaWitness&) const = default;
};

/// N = max over coordinate position i and element b of the number of
/// (n-1)-tuples completing b at position i into the relation.
struct MaBound {
  std::uint64_t bound = 0;
  bool degenerate = false;  // empty relation admits no bound N >= 1
  std::optional<MaWitness> witness;

  bool operator==(const MaBound&) const = default;
};

inline MaBound ma_bound(const FiniteRelation& r) {
  MaBound res;
  if (r.tuples.empty()) {
    res.degenerate = true;
    return res;
  }
  for (std::size_t i = 0; i < r.arity; ++i) {
    std::map<std::int64_t, std::uint64_t> fiber;
    for (const auto& t : r.tuples) ++fiber[t[i]];
    for (const auto& [elem, count] : fiber)
      if (count > res.bound) {
        res.bound = count;
        res.witness = MaWitness{i, elem};
      }
  }
  return res;
}

/// Re-counts the witness fiber; true iff it reproduces the bound and no
/// (position, element) fiber exceeds it.
inline bool verify_ma_bound(const FiniteRelation& r, const MaBound& b) {
  if (r.tuples.empty()) return b.bound == 0 && b.degenerate;
  if (!b.witness) return false;
  std::uint64_t max_fiber = 0, witness_fiber = 0;
  for (std::size_t i = 0; i < r.arity; ++i) {
    std::map<std::int64_t, std::uint64_t> fiber;
    for (const auto& t : r.tuples) ++fiber[t[i]];
    for (const auto& [elem, count] : fiber) {
      max_fiber = std::max(max_fiber, count);
      if (i == b.witness->position && elem == b.witness->element) witness_fiber = count;
    }
  }
  return max_fiber == b.bound && witness_fiber == b.bound;
}

/// Per-position bounds plus the characterization cross-checks: for graph
/// relations the bound must equal the maximum degree, for function graphs
/// the maximum fiber of the function. A mismatch falsifies the
/// characterization and throws.
struct MaProfile {
  std::vector<std::uint64_t> per_position;
  MaBound bound;
  std::optional<std::uint64_t> max_degree;          // graph relations only
  std::optional<std::uint64_t> max_function_fiber;  // function graphs only

  bool operator==(const MaProfile&) const = default;
};

inline MaProfile ma_profile(const FiniteRelation& r) {
  MaProfile prof;
  prof.bound = ma_bound(r);
  for (std::size_t i = 0; i < r.arity; ++i) {
    std::map<std::int64_t, std::uint64_t> fiber;
    for (const auto& t : r.tuples) ++fiber[t[i]];
    std::uint64_t best = 0;
    for (const auto& [elem, count] : fiber) best = std::max(best, count);
    prof.per_position.push_back(best);
  }
  if (r.is_graph_relation()) {
    std::map<std::int64_t, std::uint64_t> deg;
    for (const auto& t : r.tuples) ++deg[t[0]];  // symmetric: out-neighbors = neighbors
    std::uint64_t max_deg = 0;
    for (const auto& [v, d] : deg) max_deg = std::max(max_deg, d);
    prof.max_degree = max_deg;
    if (!r.tuples.empty() && max_deg != prof.bound.bound)
      throw Error("falsified: graph max degree " + std::to_string(max_deg) +
                  " differs from MA bound " + std::to_string(prof.bound.bound));
  }
  if (r.is_function_graph()) {
    std::map<std::int64_t, std::uint64_t> fiber;
    for (const auto& t : r.tuples) ++fiber[t[1]];
    std::uint64_t max_fib = 0;
    for (const auto& [v, c] : fiber) max_fib = std::max(max_fib, c);
    prof.max_function_fiber = max_fib;
    std::uint64_t expected = std::max<std::uint64_t>(1, max_fib);
    if (!r.tuples.empty() && expected != prof.bound.bound)
      throw Error("falsified: function max fiber " + std::to_string(max_fib) +
                  " disagrees with MA bound " + std::to_string(prof.bound.bound));
  }
  return prof;
}

}  // namespace vaporlab
