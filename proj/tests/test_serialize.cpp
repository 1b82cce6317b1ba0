#include <vaporlab/pi.hpp>
#include <vaporlab/serialize.hpp>

#include <doctest.h>

using namespace vaporlab;

namespace {

template <class T>
void check_roundtrip(const T& value) {
  Json j = value;
  T back = j.get<T>();
  CHECK(back == value);
  // serialization itself is deterministic
  CHECK(Json(back).dump() == j.dump());
}

std::vector<BigInt> bigs(std::initializer_list<long long> vs) {
  std::vector<BigInt> out;
  for (long long v : vs) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("every report type re-parses into an equal value") {
  auto fact = SparseSequence::factorials(1, 10);

  check_roundtrip(fact);
  check_roundtrip(SparseSequence::explicit_terms(bigs({3, 5, 9})));
  check_roundtrip(SparseSequence::steered(bigs({3, 4, 6}), "pi-floor:0..2"));
  check_roundtrip(residue_certificate(fact, 6));
  check_roundtrip(growth_certificate(fact, 2, 0));
  check_roundtrip(vaporous_report(fact, 8, 3));
  check_roundtrip(AtomicFormula(LinearEq{1, 2, -3}));
  check_roundtrip(AtomicFormula(Congruence{12, 7}));
  check_roundtrip(threshold(fact, LinearEq{1, 2, 0}));
  check_roundtrip(threshold(SparseSequence::explicit_terms(bigs({1, 2, 3, 4})),
                            LinearEq{1, 2, 0}));  // failure entry
  check_roundtrip(ei_check(fact, {LinearEq{1, 2, 0}, Congruence{2, 0}},
                           TupleMode::Injective));
  check_roundtrip(equality_pattern_table(fact, LinearEq{1, 2, 0}, 1));
  check_roundtrip(equality_pattern_table(SparseSequence::factorials(1, 15),
                                         LinearEq{1, 2, 0}, 0));  // unstable entry
  {
    std::vector<BigInt> base;
    for (int i = 1; i <= 20; ++i) base.push_back(i);
    check_roundtrip(extract_ei_subsequence(base, {Congruence{2, 0}}, 5));
  }
  check_roundtrip(enumerate_lineq_solutions(fact, 1, 2, 0, true));
  check_roundtrip(enumerate_lineq_solutions(fact, 2, 1, -3, false));

  auto g = Graph::from_edges(5, {{2, 3}, {0, 1}});
  check_roundtrip(g);
  check_roundtrip(encode(SparseSequence::factorials(1, 5), g));
  check_roundtrip(roundtrip(SparseSequence::factorials(1, 5), g));
  check_roundtrip(decode(bigs({1, 2, 6, 24, 30, 120})));
  check_roundtrip(urank_construction(2, 4));
  check_roundtrip(multiset_sum_injectivity(SparseSequence::explicit_terms(bigs({1, 2, 3})), 2));

  auto rel = FiniteRelation::make({1, 2, 3}, 2, {{1, 2}, {2, 1}, {2, 3}, {3, 2}});
  check_roundtrip(rel);
  check_roundtrip(ma_bound(rel));
  check_roundtrip(ma_profile(rel));
  check_roundtrip(ma_bound(FiniteRelation::make({1, 2}, 2, {})));  // degenerate
}

TEST_CASE("sequence files carry a JSON header and decimal terms") {
  auto fact = SparseSequence::factorials(2, 4);
  std::string text = write_sequence_file(fact);
  CHECK(text == "{\"kind\":\"factorial\",\"start\":2,\"length\":4}\n2\n6\n24\n120\n");
  CHECK(read_sequence_file(text) == fact);

  auto steered = SparseSequence::steered(bigs({3, 4, 6}), "demo");
  CHECK(read_sequence_file(write_sequence_file(steered)) == steered);

  CHECK_THROWS_AS(read_sequence_file(""), Error);
  CHECK_THROWS_AS(
      read_sequence_file("{\"kind\":\"explicit\",\"length\":3}\n1\n2\n"),
      Error);  // length mismatch
  CHECK_THROWS_AS(
      read_sequence_file("{\"kind\":\"factorial\",\"start\":1,\"length\":2}\n1\n3\n"),
      Error);  // wrong factorial terms
}

TEST_CASE("edge pair text accepts newlines, commas and semicolons") {
  auto pairs = parse_edge_pairs("2 3\n0 1");
  CHECK(pairs == std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {0, 1}});
  CHECK(parse_edge_pairs("2 3, 0 1; 1 4").size() == 3);
  CHECK(parse_edge_pairs("").empty());
  CHECK_THROWS_AS(parse_edge_pairs("1"), Error);
  CHECK_THROWS_AS(parse_edge_pairs("1 2 3"), Error);

  auto g = Graph::from_edges(5, parse_edge_pairs("2 3,3 2"));
  CHECK(write_edge_list(g) == "2 3\n");
}

TEST_CASE("big integers serialize as decimal strings") {
  BigInt huge = BigInt("123456789012345678901234567890123456789");
  Json j = big_json(huge);
  CHECK(j.is_string());
  CHECK(big_from(j) == huge);
  CHECK_THROWS_AS(big_from(Json("12x")), Error);
}
