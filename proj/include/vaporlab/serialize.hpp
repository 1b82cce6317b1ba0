#pragma once

#include <vaporlab/codec.hpp>
#include <vaporlab/formulas.hpp>
#include <vaporlab/mutalg.hpp>
#include <vaporlab/sequences.hpp>
#include <vaporlab/solver.hpp>

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace vaporlab {

using Json = nlohmann::ordered_json;

// Big integers always serialize as decimal strings; JSON numbers silently
// lose precision past 2^53.
inline Json big_json(const BigInt& v) { return v.str(); }

inline BigInt big_from(const Json& j) { return parse_bigint(j.get<std::string>()); }

inline Json big_list_json(const std::vector<BigInt>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) arr.push_back(big_json(v));
  return arr;
}

inline std::vector<BigInt> big_list_from(const Json& j) {
  std::vector<BigInt> out;
  for (const auto& e : j) out.push_back(big_from(e));
  return out;
}

inline Json pair_list_json(const std::vector<ValuePair>& ps) {
  Json arr = Json::array();
  for (const auto& [a, b] : ps) arr.push_back(Json::array({big_json(a), big_json(b)}));
  return arr;
}

inline std::vector<ValuePair> pair_list_from(const Json& j) {
  std::vector<ValuePair> out;
  for (const auto& e : j) out.push_back({big_from(e[0]), big_from(e[1])});
  return out;
}

// --- Rational ---------------------------------------------------------------

inline void to_json(Json& j, const Rational& r) {
  j = Json{{"num", big_json(r.num)}, {"den", big_json(r.den)}};
}

inline void from_json(const Json& j, Rational& r) {
  r = Rational(big_from(j.at("num")), big_from(j.at("den")));
}

// --- SparseSequence ----------------------------------------------------------

inline void to_json(Json& j, const SparseSequence& s) {
  j = Json{{"kind", seq_kind_name(s.kind)}};
  if (s.kind == SeqKind::Factorial) j["start"] = s.start;
  if (s.kind == SeqKind::Steered) j["descriptor"] = s.descriptor;
  j["length"] = s.length();
  j["terms"] = big_list_json(s.terms);
}

inline SeqKind seq_kind_from(const std::string& name) {
  if (name == "factorial") return SeqKind::Factorial;
  if (name == "steered") return SeqKind::Steered;
  if (name == "explicit") return SeqKind::Explicit;
  throw Error("unknown sequence kind '" + name + "'");
}

inline void from_json(const Json& j, SparseSequence& s) {
  SeqKind kind = seq_kind_from(j.at("kind").get<std::string>());
  auto terms = big_list_from(j.at("terms"));
  if (kind == SeqKind::Factorial) {
    SparseSequence probe = SparseSequence::factorials(j.at("start").get<std::uint64_t>(),
                                                      terms.size());
    if (probe.terms != terms) throw Error("factorial sequence terms are inconsistent");
    s = std::move(probe);
  } else if (kind == SeqKind::Steered) {
    s = SparseSequence::steered(std::move(terms),
                                j.value("descriptor", std::string{}));
  } else {
    s = SparseSequence::explicit_terms(std::move(terms));
  }
}

/// File form: one-line JSON header, then newline-delimited decimal terms.
inline std::string write_sequence_file(const SparseSequence& s) {
  Json header{{"kind", seq_kind_name(s.kind)}};
  if (s.kind == SeqKind::Factorial) header["start"] = s.start;
  if (s.kind == SeqKind::Steered) header["descriptor"] = s.descriptor;
  header["length"] = s.length();
  std::ostringstream os;
  os << header.dump() << "\n";
  for (const auto& t : s.terms) os << t.str() << "\n";
  return os.str();
}

/// JSON parse with domain-level error reporting.
inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error("bad JSON in " + what + ": " + e.what());
  }
}

inline SparseSequence read_sequence_file(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error("empty sequence file");
  Json header = parse_json(line, "sequence file header");
  std::vector<BigInt> terms;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    terms.push_back(parse_bigint(line));
  }
  std::size_t expect = header.at("length").get<std::size_t>();
  if (terms.size() != expect)
    throw Error("sequence file header declares " + std::to_string(expect) + " terms, found " +
                std::to_string(terms.size()));
  Json full = header;
  full["terms"] = big_list_json(terms);
  return full.get<SparseSequence>();
}

// --- certificates and sequence reports ---------------------------------------

inline void to_json(Json& j, const ResidueCertificate& c) {
  j = Json{{"modulus", c.modulus},
           {"stabilization_index", c.stabilization_index},
           {"stable_residue", c.stable_residue},
           {"degenerate", c.degenerate}};
}

inline void from_json(const Json& j, ResidueCertificate& c) {
  c.modulus = j.at("modulus").get<std::uint64_t>();
  c.stabilization_index = j.at("stabilization_index").get<std::size_t>();
  c.stable_residue = j.at("stable_residue").get<std::uint64_t>();
  c.degenerate = j.at("degenerate").get<bool>();
}

inline void to_json(Json& j, const GrowthCertificate& c) {
  j = Json{{"t", c.t}, {"r_abs", c.r_abs}, {"k", c.k}};
}

inline void from_json(const Json& j, GrowthCertificate& c) {
  c.t = j.at("t").get<std::uint64_t>();
  c.r_abs = j.at("r_abs").get<std::uint64_t>();
  c.k = j.at("k").get<std::size_t>();
}

inline void to_json(Json& j, const VaporousReport& r) {
  j = Json{{"max_modulus", r.max_modulus},
           {"tail_start", r.tail_start},
           {"residue_certificates", r.residue_certs},
           {"all_stabilized", r.all_stabilized},
           {"min_tail_ratio", r.min_tail_ratio},
           {"generator_proved", r.generator_proved}};
}

inline void from_json(const Json& j, VaporousReport& r) {
  r.max_modulus = j.at("max_modulus").get<std::uint64_t>();
  r.tail_start = j.at("tail_start").get<std::size_t>();
  r.residue_certs = j.at("residue_certificates").get<std::vector<ResidueCertificate>>();
  r.all_stabilized = j.at("all_stabilized").get<bool>();
  r.min_tail_ratio = j.at("min_tail_ratio").get<Rational>();
  r.generator_proved = j.at("generator_proved").get<bool>();
}

// --- formulas ----------------------------------------------------------------

inline void to_json(Json& j, const AtomicFormula& f) { j = format_formula(f); }

inline void from_json(const Json& j, AtomicFormula& f) {
  f = parse_formula(j.get<std::string>());
}

inline void to_json(Json& j, const ThresholdReport& t) {
  j = Json{{"formula", t.formula}, {"ok", t.ok}};
  if (t.ok) {
    j["k_phi"] = t.k_phi;
    j["tail_value"] = t.tail_value;
    j["verified"] = t.verified;
  } else {
    j["failure"] = t.failure;
  }
}

inline void from_json(const Json& j, ThresholdReport& t) {
  t = ThresholdReport{};
  t.formula = j.at("formula").get<AtomicFormula>();
  t.ok = j.at("ok").get<bool>();
  if (t.ok) {
    t.k_phi = j.at("k_phi").get<std::size_t>();
    t.tail_value = j.at("tail_value").get<bool>();
    t.verified = j.at("verified").get<bool>();
  } else {
    t.failure = j.at("failure").get<std::string>();
  }
}

inline void to_json(Json& j, const EiEntry& e) {
  j = Json{{"formula", e.formula}, {"ok", e.ok}};
  if (e.ok) {
    j["k_phi"] = e.k_phi;
    j["tail_value"] = e.tail_value;
  } else {
    j["failure"] = e.failure;
  }
}

inline void from_json(const Json& j, EiEntry& e) {
  e = EiEntry{};
  e.formula = j.at("formula").get<AtomicFormula>();
  e.ok = j.at("ok").get<bool>();
  if (e.ok) {
    e.k_phi = j.at("k_phi").get<std::size_t>();
    e.tail_value = j.at("tail_value").get<bool>();
  } else {
    e.failure = j.at("failure").get<std::string>();
  }
}

inline void to_json(Json& j, const IndiscernibilityReport& r) {
  j = Json{{"mode", mode_name(r.mode)}, {"entries", r.entries}, {"all_ok", r.all_ok}};
}

inline void from_json(const Json& j, IndiscernibilityReport& r) {
  std::string mode = j.at("mode").get<std::string>();
  r.mode = mode == "increasing" ? TupleMode::Increasing : TupleMode::Injective;
  r.entries = j.at("entries").get<std::vector<EiEntry>>();
  r.all_ok = j.at("all_ok").get<bool>();
}

inline void to_json(Json& j, const PatternEntry& e) {
  j = Json{{"pattern", e.pattern}, {"value", e.value}};
}

inline void from_json(const Json& j, PatternEntry& e) {
  e.pattern = j.at("pattern").get<Pattern>();
  e.value = j.at("value").get<bool>();
}

inline void to_json(Json& j, const PatternInstability& u) {
  j = Json{{"pattern", u.pattern},
           {"true_tuple", u.true_tuple},
           {"false_tuple", u.false_tuple}};
}

inline void from_json(const Json& j, PatternInstability& u) {
  u.pattern = j.at("pattern").get<Pattern>();
  u.true_tuple = j.at("true_tuple").get<std::vector<std::size_t>>();
  u.false_tuple = j.at("false_tuple").get<std::vector<std::size_t>>();
}

inline void to_json(Json& j, const PatternTable& t) {
  j = Json{{"formula", t.formula},
           {"k", t.k},
           {"stable", t.stable},
           {"entries", t.entries},
           {"unrealizable", t.unrealizable}};
  j["unstable"] = t.unstable ? Json(*t.unstable) : Json(nullptr);
}

inline void from_json(const Json& j, PatternTable& t) {
  t = PatternTable{};
  t.formula = j.at("formula").get<AtomicFormula>();
  t.k = j.at("k").get<std::size_t>();
  t.stable = j.at("stable").get<bool>();
  t.entries = j.at("entries").get<std::vector<PatternEntry>>();
  t.unrealizable = j.at("unrealizable").get<std::vector<Pattern>>();
  if (!j.at("unstable").is_null()) t.unstable = j.at("unstable").get<PatternInstability>();
}

inline void to_json(Json& j, const ExtractResult& r) {
  j = Json{{"indices", r.indices}, {"values", big_list_json(r.values)}};
}

inline void from_json(const Json& j, ExtractResult& r) {
  r.indices = j.at("indices").get<std::vector<std::size_t>>();
  r.values = big_list_from(j.at("values"));
}

// --- solver ------------------------------------------------------------------

inline void to_json(Json& j, const IndexTuplePair& p) {
  j = Json{{"x", p.xs}, {"y", p.ys}};
}

inline void from_json(const Json& j, IndexTuplePair& p) {
  p.xs = j.at("x").get<std::vector<std::size_t>>();
  p.ys = j.at("y").get<std::vector<std::size_t>>();
}

inline void to_json(Json& j, const SolutionSet& s) {
  j = Json{{"m", s.m},
           {"n", s.n},
           {"r", s.r},
           {"require_max_differ", s.require_max_differ},
           {"truncation_length", s.truncation_length},
           {"bound_checked", s.bound_checked}};
  j["max_index_bound"] = s.max_index_bound ? Json(*s.max_index_bound) : Json(nullptr);
  j["count"] = s.solutions.size();
  j["solutions"] = s.solutions;
}

inline void from_json(const Json& j, SolutionSet& s) {
  s = SolutionSet{};
  s.m = j.at("m").get<std::uint32_t>();
  s.n = j.at("n").get<std::uint32_t>();
  s.r = j.at("r").get<std::int64_t>();
  s.require_max_differ = j.at("require_max_differ").get<bool>();
  s.truncation_length = j.at("truncation_length").get<std::size_t>();
  s.bound_checked = j.at("bound_checked").get<bool>();
  if (!j.at("max_index_bound").is_null())
    s.max_index_bound = j.at("max_index_bound").get<std::size_t>();
  s.solutions = j.at("solutions").get<std::vector<IndexTuplePair>>();
}

// --- codec -------------------------------------------------------------------

inline void to_json(Json& j, const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  j = Json{{"vertex_count", g.vertex_count}, {"edges", edges}};
}

inline void from_json(const Json& j, Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> list;
  for (const auto& e : j.at("edges"))
    list.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  g = Graph::from_edges(j.at("vertex_count").get<std::size_t>(), list);
}

inline void to_json(Json& j, const EncodedSet& e) {
  j = Json{{"values", big_list_json(e.values)},
           {"q_values", big_list_json(e.q_values)},
           {"sum_values", big_list_json(e.sum_values)},
           {"collisions", big_list_json(e.collisions)}};
}

inline void from_json(const Json& j, EncodedSet& e) {
  e.values = big_list_from(j.at("values"));
  e.q_values = big_list_from(j.at("q_values"));
  e.sum_values = big_list_from(j.at("sum_values"));
  e.collisions = big_list_from(j.at("collisions"));
}

inline void to_json(Json& j, const DecodeExceptions& e) {
  j = Json{{"q_missing", big_list_json(e.q_missing)},
           {"q_spurious", big_list_json(e.q_spurious)},
           {"e_missing", pair_list_json(e.e_missing)},
           {"e_spurious", pair_list_json(e.e_spurious)}};
}

inline void from_json(const Json& j, DecodeExceptions& e) {
  e.q_missing = big_list_from(j.at("q_missing"));
  e.q_spurious = big_list_from(j.at("q_spurious"));
  e.e_missing = pair_list_from(j.at("e_missing"));
  e.e_spurious = pair_list_from(j.at("e_spurious"));
}

inline void to_json(Json& j, const DecodeThresholds::Entry& e) {
  j = Json{{"m", e.m}, {"n", e.n}, {"available", e.available}};
  if (e.available) {
    j["k"] = e.k;
    j["bound_value"] = big_json(e.bound_value);
  }
}

inline void from_json(const Json& j, DecodeThresholds::Entry& e) {
  e = DecodeThresholds::Entry{};
  e.m = j.at("m").get<std::uint32_t>();
  e.n = j.at("n").get<std::uint32_t>();
  e.available = j.at("available").get<bool>();
  if (e.available) {
    e.k = j.at("k").get<std::size_t>();
    e.bound_value = big_from(j.at("bound_value"));
  }
}

inline void to_json(Json& j, const DecodeThresholds& t) {
  j = Json{{"entries", t.entries}};
}

inline void from_json(const Json& j, DecodeThresholds& t) {
  t.entries = j.at("entries").get<std::vector<DecodeThresholds::Entry>>();
}

inline void to_json(Json& j, const DecodeReport& r) {
  j = Json{{"q_hat", big_list_json(r.q_hat)},
           {"e_hat", pair_list_json(r.e_hat)},
           {"flagged", big_list_json(r.flagged)}};
  j["exceptions"] = r.exceptions ? Json(*r.exceptions) : Json(nullptr);
  j["thresholds"] = r.thresholds ? Json(*r.thresholds) : Json(nullptr);
  j["falsifications"] = r.falsifications;
}

inline void from_json(const Json& j, DecodeReport& r) {
  r = DecodeReport{};
  r.q_hat = big_list_from(j.at("q_hat"));
  r.e_hat = pair_list_from(j.at("e_hat"));
  r.flagged = big_list_from(j.at("flagged"));
  if (!j.at("exceptions").is_null())
    r.exceptions = j.at("exceptions").get<DecodeExceptions>();
  if (!j.at("thresholds").is_null())
    r.thresholds = j.at("thresholds").get<DecodeThresholds>();
  r.falsifications = j.at("falsifications").get<std::vector<std::string>>();
}

inline void to_json(Json& j, const UrankConstruction& u) {
  j = Json{{"n", u.n},
           {"count", u.count},
           {"q", big_list_json(u.q)},
           {"b", big_list_json(u.b)},
           {"a", big_list_json(u.a)},
           {"b_cap_q", big_list_json(u.b_cap_q)},
           {"degenerate", u.degenerate}};
}

inline void from_json(const Json& j, UrankConstruction& u) {
  u.n = j.at("n").get<std::uint64_t>();
  u.count = j.at("count").get<std::uint64_t>();
  u.q = big_list_from(j.at("q"));
  u.b = big_list_from(j.at("b"));
  u.a = big_list_from(j.at("a"));
  u.b_cap_q = big_list_from(j.at("b_cap_q"));
  u.degenerate = j.at("degenerate").get<bool>();
}

inline void to_json(Json& j, const InjectivityResult& r) {
  j = Json{{"injective", r.injective}};
  j["collision"] = r.collision ? Json(Json::array({big_list_json(r.collision->first),
                                                   big_list_json(r.collision->second)}))
                               : Json(nullptr);
}

inline void from_json(const Json& j, InjectivityResult& r) {
  r = InjectivityResult{};
  r.injective = j.at("injective").get<bool>();
  if (!j.at("collision").is_null())
    r.collision = {big_list_from(j.at("collision")[0]), big_list_from(j.at("collision")[1])};
}

// --- mutalg ------------------------------------------------------------------

inline void to_json(Json& j, const FiniteRelation& r) {
  j = Json{{"universe", r.universe}, {"arity", r.arity}, {"tuples", r.tuples}};
}

inline void from_json(const Json& j, FiniteRelation& r) {
  r = FiniteRelation::make(j.at("universe").get<std::vector<std::int64_t>>(),
                           j.at("arity").get<std::size_t>(),
                           j.at("tuples").get<std::vector<std::vector<std::int64_t>>>());
}

inline void to_json(Json& j, const MaWitness& w) {
  j = Json{{"position", w.position}, {"element", w.element}};
}

inline void from_json(const Json& j, MaWitness& w) {
  w.position = j.at("position").get<std::size_t>();
  w.element = j.at("element").get<std::int64_t>();
}

inline void to_json(Json& j, const MaBound& b) {
  j = Json{{"bound", b.bound}, {"degenerate", b.degenerate}};
  j["witness"] = b.witness ? Json(*b.witness) : Json(nullptr);
}

inline void from_json(const Json& j, MaBound& b) {
  b = MaBound{};
  b.bound = j.at("bound").get<std::uint64_t>();
  b.degenerate = j.at("degenerate").get<bool>();
  if (!j.at("witness").is_null()) b.witness = j.at("witness").get<MaWitness>();
}

inline void to_json(Json& j, const MaProfile& p) {
  j = Json{{"per_position", p.per_position}, {"bound", p.bound}};
  j["max_degree"] = p.max_degree ? Json(*p.max_degree) : Json(nullptr);
  j["max_function_fiber"] =
      p.max_function_fiber ? Json(*p.max_function_fiber) : Json(nullptr);
}

inline void from_json(const Json& j, MaProfile& p) {
  p = MaProfile{};
  p.per_position = j.at("per_position").get<std::vector<std::uint64_t>>();
  p.bound = j.at("bound").get<MaBound>();
  if (!j.at("max_degree").is_null())
    p.max_degree = j.at("max_degree").get<std::uint64_t>();
  if (!j.at("max_function_fiber").is_null())
    p.max_function_fiber = j.at("max_function_fiber").get<std::uint64_t>();
}

// --- text formats -------------------------------------------------------------

/// Edge pairs from text: one `u v` pair per line; `,` and `;` also separate
/// pairs so small edge lists fit on a CLI flag.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_edge_pairs(
    const std::string& text) {
  std::string norm = text;
  for (char& c : norm)
    if (c == ',' || c == ';') c = '\n';
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::istringstream lines(norm);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream is(line);
    std::size_t u, v;
    if (!(is >> u)) continue;  // blank line
    if (!(is >> v)) throw Error("edge line needs two vertex indices: '" + line + "'");
    std::string rest;
    if (is >> rest) throw Error("trailing tokens in edge line: '" + line + "'");
    out.push_back({u, v});
  }
  return out;
}

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  for (const auto& [u, v] : g.edges) os << u << " " << v << "\n";
  return os.str();
}

}  // namespace vaporlab
