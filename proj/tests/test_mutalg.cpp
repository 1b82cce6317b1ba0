#include <vaporlab/mutalg.hpp>

#include <doctest.h>

#include <random>

using namespace vaporlab;

namespace {

FiniteRelation graph_relation(const std::vector<std::int64_t>& universe,
                              const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  std::vector<std::vector<std::int64_t>> tuples;
  for (auto [u, v] : edges) {
    tuples.push_back({u, v});
    tuples.push_back({v, u});
  }
  return FiniteRelation::make(universe, 2, tuples);
}

// independent degree count straight off the edge list
std::uint64_t oracle_max_degree(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  std::map<std::int64_t, std::uint64_t> deg;
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  std::uint64_t best = 0;
  for (auto& [v, d] : deg) best = std::max(best, d);
  return best;
}

}  // namespace

TEST_CASE("ma_bound matches the worked examples") {
  // path 1-2-3-4-5
  auto path = graph_relation({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto b = ma_bound(path);
  CHECK(b.bound == 2);
  REQUIRE(b.witness.has_value());
  CHECK(b.witness->position == 0);
  CHECK(b.witness->element == 2);  // first interior vertex in scan order
  CHECK(verify_ma_bound(path, b));

  // unary relation {2,4} on {1..5}
  auto unary = FiniteRelation::make({1, 2, 3, 4, 5}, 1, {{2}, {4}});
  CHECK(ma_bound(unary).bound == 1);

  // graph of x -> x+1 mod 5
  std::vector<std::vector<std::int64_t>> succ;
  for (std::int64_t x = 0; x < 5; ++x) succ.push_back({x, (x + 1) % 5});
  auto fn = FiniteRelation::make({0, 1, 2, 3, 4}, 2, succ);
  CHECK(ma_bound(fn).bound == 1);
}

TEST_CASE("ma_bound flags the empty relation as degenerate") {
  auto empty = FiniteRelation::make({1, 2, 3, 4, 5}, 2, {});
  auto b = ma_bound(empty);
  CHECK(b.bound == 0);
  CHECK(b.degenerate);
  CHECK_FALSE(b.witness.has_value());
  auto prof = ma_profile(empty);
  CHECK(prof.bound.degenerate);
  CHECK(prof.per_position == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("ma_profile reports the example characterizations") {
  // star K_{1,4} with center 0
  auto star = graph_relation({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto prof = ma_profile(star);
  CHECK(prof.per_position == std::vector<std::uint64_t>{4, 4});
  REQUIRE(prof.max_degree.has_value());
  CHECK(*prof.max_degree == 4);
  CHECK(prof.bound.bound == 4);

  // constant function on {1..6}
  std::vector<std::vector<std::int64_t>> rows;
  for (std::int64_t x = 1; x <= 6; ++x) rows.push_back({x, 3});
  auto constant = FiniteRelation::make({1, 2, 3, 4, 5, 6}, 2, rows);
  prof = ma_profile(constant);
  CHECK(prof.per_position == std::vector<std::uint64_t>{1, 6});
  REQUIRE(prof.max_function_fiber.has_value());
  CHECK(*prof.max_function_fiber == 6);
  CHECK(prof.bound.bound == 6);
}

TEST_CASE("ma bound equals max degree on random graphs") {
  std::mt19937_64 rng(5150);
  for (int round = 0; round < 50; ++round) {
    std::size_t vertices = 2 + rng() % 39;
    std::vector<std::int64_t> universe;
    for (std::size_t i = 0; i < vertices; ++i) universe.push_back(static_cast<std::int64_t>(i));
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (std::size_t u = 0; u < vertices; ++u)
      for (std::size_t v = u + 1; v < vertices; ++v)
        if (rng() % 3 == 0) edges.push_back({universe[u], universe[v]});
    auto rel = graph_relation(universe, edges);
    auto prof = ma_profile(rel);  // throws if the characterization failed
    CHECK(prof.bound.bound == oracle_max_degree(edges));
  }
}

TEST_CASE("ma bound equals max fiber on random functions") {
  std::mt19937_64 rng(6174);
  for (int round = 0; round < 50; ++round) {
    std::size_t points = 1 + rng() % 40;
    std::vector<std::int64_t> universe;
    for (std::size_t i = 0; i < points; ++i) universe.push_back(static_cast<std::int64_t>(i));
    std::vector<std::vector<std::int64_t>> rows;
    std::map<std::int64_t, std::uint64_t> fiber;
    for (std::int64_t x : universe) {
      std::int64_t y = universe[rng() % points];
      rows.push_back({x, y});
      ++fiber[y];
    }
    std::uint64_t max_fiber = 0;
    for (auto& [y, c] : fiber) max_fiber = std::max(max_fiber, c);
    auto prof = ma_profile(FiniteRelation::make(universe, 2, rows));
    REQUIRE(prof.max_function_fiber.has_value());
    CHECK(prof.bound.bound == std::max<std::uint64_t>(1, max_fiber));
  }
}

TEST_CASE("removing tuples never increases the bound") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 40; ++round) {
    std::size_t uni_size = 3 + rng() % 10;
    std::size_t arity = 1 + rng() % 3;
    std::vector<std::int64_t> universe;
    for (std::size_t i = 0; i < uni_size; ++i) universe.push_back(static_cast<std::int64_t>(i));
    std::vector<std::vector<std::int64_t>> tuples;
    std::size_t count = 1 + rng() % 30;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::int64_t> t;
      for (std::size_t a = 0; a < arity; ++a) t.push_back(universe[rng() % uni_size]);
      tuples.push_back(t);
    }
    auto full = FiniteRelation::make(universe, arity, tuples);
    auto reduced_tuples = full.tuples;
    if (!reduced_tuples.empty()) reduced_tuples.erase(reduced_tuples.begin() + rng() % reduced_tuples.size());
    auto reduced = FiniteRelation::make(universe, arity, reduced_tuples);
    CHECK(ma_bound(reduced).bound <= ma_bound(full).bound);
  }
}

TEST_CASE("relation validation") {
  CHECK_THROWS_AS(FiniteRelation::make({1, 2}, 2, {{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteRelation::make({1, 2}, 2, {{1}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteRelation::make({1, 2}, 0, {}), std::invalid_argument);
}
