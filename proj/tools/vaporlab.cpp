// vaporlab: sparse-sequence laboratory CLI.
//
// Subcommands mirror the library modules:
//   seq {factorial|pi-floor|prime-powers|crt-schedule|steer|residue|growth|vaporous}
//   formula {eval|threshold|ei-check|pattern|extract}
//   solve {lineq|combo|facbase}
//   codec {encode|decode|roundtrip|sumset|urank|inject}
//   ma {bound|profile}
//
// Reports are JSON on stdout (or --out FILE); --table renders a line-oriented
// human view. Exit codes: 0 success, 1 domain error (structured JSON on
// stdout), 2 usage error.

#include <vaporlab/pi.hpp>
#include <vaporlab/serialize.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace vaporlab;

struct Output {
  std::string path;  // empty = stdout
  bool table = false;
};

struct DomainErrorWithDetail : vaporlab::Error {
  Json detail;
  DomainErrorWithDetail(const std::string& msg, Json d)
      : Error(msg), detail(std::move(d)) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + out.path);
  f << text;
}

void render_table(const Json& j, std::ostream& os, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) {
      if (val.is_object() || val.is_array()) {
        os << prefix << key << ":\n";
        render_table(val, os, prefix + "  ");
      } else {
        os << prefix << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
           << "\n";
      }
    }
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& e : j)
      if (e.is_object() || e.is_array()) scalars = false;
    if (scalars) {
      os << prefix;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << " ";
        os << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      }
      os << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << prefix << "- [" << i << "]\n";
        render_table(j[i], os, prefix + "  ");
      }
    }
  } else {
    os << prefix << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Output& out, const Json& j) {
  if (out.table) {
    std::ostringstream os;
    render_table(j, os);
    write_text(out, os.str());
    return;
  }
  write_text(out, j.dump(2) + "\n");
}

std::vector<BigInt> parse_big_list(const std::string& text) {
  std::vector<BigInt> out;
  std::string norm = text;
  for (char& c : norm)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(norm);
  std::string tok;
  while (is >> tok) out.push_back(parse_bigint(tok));
  return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const BigInt& v : parse_big_list(text)) out.push_back(to_i64(v));
  return out;
}

/// Inline sequence literals: factorial:START:COUNT, explicit:v1,v2,...,
/// steered-pi:COUNT (CRT-steered floor(pi^n) for n = 0..COUNT).
SparseSequence sequence_from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "factorial") {
    auto second = rest.find(':');
    if (second == std::string::npos)
      throw Error("factorial literal needs START:COUNT, got '" + spec + "'");
    std::uint64_t start = to_i64(parse_bigint(rest.substr(0, second)));
    std::uint64_t count = to_i64(parse_bigint(rest.substr(second + 1)));
    return SparseSequence::factorials(start, count);
  }
  if (head == "explicit") return SparseSequence::explicit_terms(parse_big_list(rest));
  if (head == "steered-pi") {
    std::uint64_t count = to_i64(parse_bigint(rest));
    if (count == 0) throw Error("steered-pi literal needs COUNT >= 1");
    std::vector<BigInt> base = certified_pi_power_floors(count);
    return SparseSequence::steered(crt_steer(base), "pi-floor:0.." + rest);
  }
  throw Error("unknown sequence literal '" + spec +
              "' (expected factorial:S:C, explicit:..., steered-pi:N)");
}

struct SeqInput {
  std::string spec;
  std::string file;

  SparseSequence load() const {
    if (!spec.empty() && !file.empty())
      throw Error("give either an inline sequence or a sequence file, not both");
    if (!spec.empty()) return sequence_from_spec(spec);
    if (!file.empty()) return read_sequence_file(read_file(file));
    throw Error("a sequence is required (--seq or --seq-file)");
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--seq", spec,
                    "inline sequence literal (factorial:S:C, explicit:v1,v2,..., steered-pi:N)");
    cmd->add_option("--seq-file", file, "sequence file (JSON header + decimal terms)");
  }
};

Graph graph_from_flags(const SparseSequence& seq, const std::string& edges,
                       const std::string& edges_file) {
  std::string text = edges;
  if (!edges_file.empty()) {
    if (!edges.empty()) throw Error("give either --edges or --edges-file, not both");
    text = read_file(edges_file);
  }
  return Graph::from_edges(seq.length(), parse_edge_pairs(text));
}

int run(int argc, char** argv) {
  CLI::App app{"vaporous-sequence laboratory"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--out", out.path, "write the report to FILE instead of stdout");
  auto* table_flag = app.add_flag("--table", "line-oriented human output");
  app.add_flag("--json", "JSON output (default)")->excludes(table_flag);

  // VAPORLAB_THREADS caps internal parallelism. All operations currently run
  // sequentially, which trivially satisfies the determinism contract; the
  // variable is validated for forward compatibility.
  if (const char* env = std::getenv("VAPORLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error("VAPORLAB_THREADS must be a positive integer");
  }

  Json report;

  // --- seq -------------------------------------------------------------
  auto* seq_cmd = app.add_subcommand("seq", "sequence generation and certificates");
  seq_cmd->require_subcommand(1);

  {
    auto* c = seq_cmd->add_subcommand("factorial", "terms start!, (start+1)!, ...");
    auto start = std::make_shared<std::uint64_t>(1);
    auto count = std::make_shared<std::uint64_t>(1);
    auto seq_out = std::make_shared<std::string>();
    c->add_option("--start", *start, "first factorial argument (>= 1)")->required();
    c->add_option("--count", *count, "number of terms")->required();
    c->add_option("--seq-out", *seq_out, "also write the sequence file format to FILE");
    c->callback([&report, start, count, seq_out] {
      auto seq = SparseSequence::factorials(*start, *count);
      if (!seq_out->empty()) {
        std::ofstream f(*seq_out, std::ios::binary);
        if (!f) throw Error("cannot open output file: " + *seq_out);
        f << write_sequence_file(seq);
      }
      report = seq;
    });
  }
  {
    auto* c = seq_cmd->add_subcommand("pi-floor", "b_n = floor(pi^n), n = 1..count");
    auto count = std::make_shared<std::uint64_t>(1);
    c->add_option("--count", *count, "number of powers")->required();
    c->callback([&report, count] {
      report = Json{{"count", *count}, {"terms", big_list_json(floor_pi_powers(*count))}};
    });
  }
  {
    auto* c = seq_cmd->add_subcommand("prime-powers", "increasing enumeration of prime powers");
    auto count = std::make_shared<std::uint64_t>(1);
    c->add_option("--count", *count, "number of prime powers")->required();
    c->callback([&report, count] {
      report = Json{{"count", *count}, {"terms", prime_powers(*count)}};
    });
  }
  {
    auto* c = seq_cmd->add_subcommand("crt-schedule", "N_k = sum_{t<=k} (lcm(p_1..p_t) - 1)");
    auto k = std::make_shared<std::uint64_t>(0);
    c->add_option("--k", *k, "stage")->required();
    c->callback([&report, k] {
      report = Json{{"k", *k}, {"value", big_json(crt_schedule(*k))}};
    });
  }
  {
    auto* c = seq_cmd->add_subcommand("steer", "CRT residue steering of a base sequence");
    auto base = std::make_shared<std::string>();
    auto base_file = std::make_shared<std::string>();
    auto pi_count = std::make_shared<std::uint64_t>(0);
    auto from_zero = std::make_shared<bool>(false);
    auto seq_out = std::make_shared<std::string>();
    c->add_option("--base", *base, "inline base integers, comma separated");
    c->add_option("--base-file", *base_file, "file of newline-delimited base integers");
    c->add_option("--pi-powers", *pi_count, "use base floor(pi^n), n = 1..N");
    c->add_flag("--from-zero", *from_zero, "with --pi-powers, start the base at pi^0 = 1");
    c->add_option("--seq-out", *seq_out,
                  "validate the steered list as a sequence and write its file to FILE");
    c->callback([&report, base, base_file, pi_count, from_zero, seq_out] {
      int sources = int(!base->empty()) + int(!base_file->empty()) + int(*pi_count > 0);
      if (sources != 1)
        throw Error("steer needs exactly one of --base, --base-file, --pi-powers");
      std::vector<BigInt> b;
      if (!base->empty()) b = parse_big_list(*base);
      if (!base_file->empty()) b = parse_big_list(read_file(*base_file));
      if (*pi_count > 0) {
        b = certified_pi_power_floors(*pi_count);
        if (!*from_zero) b.erase(b.begin());
      }
      std::vector<BigInt> steered = crt_steer(b);
      if (!seq_out->empty()) {
        auto seq = SparseSequence::steered(steered, "steer");  // throws if not increasing
        std::ofstream f(*seq_out, std::ios::binary);
        if (!f) throw Error("cannot open output file: " + *seq_out);
        f << write_sequence_file(seq);
      }
      report = Json{{"base_length", b.size()},
                    {"base", big_list_json(b)},
                    {"steered", big_list_json(steered)}};
    });
  }
  {
    auto* c = seq_cmd->add_subcommand("residue", "stabilized residue certificate");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto m = std::make_shared<std::uint64_t>(2);
    c->add_option("--modulus,-m", *m, "modulus (>= 2)")->required();
    c->callback([&report, in, m] { report = residue_certificate(in->load(), *m); });
  }
  {
    auto* c = seq_cmd->add_subcommand("growth", "growth-threshold certificate");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto t = std::make_shared<std::uint64_t>(1);
    auto r = std::make_shared<std::uint64_t>(0);
    c->add_option("--t,-t", *t, "ratio factor t (>= 1)")->required();
    c->add_option("--r-abs,-r", *r, "additive slack |r|");
    c->callback([&report, in, t, r] { report = growth_certificate(in->load(), *t, *r); });
  }
  {
    auto* c = seq_cmd->add_subcommand("vaporous", "vaporousness report over a modulus range");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto m = std::make_shared<std::uint64_t>(2);
    auto tail = std::make_shared<std::size_t>(0);
    c->add_option("--max-modulus", *m, "check residues for 2..M")->required();
    c->add_option("--tail-start", *tail, "first index of the ratio tail")->required();
    c->callback([&report, in, m, tail] { report = vaporous_report(in->load(), *m, *tail); });
  }

  // --- formula ---------------------------------------------------------
  auto* f_cmd = app.add_subcommand("formula", "atomic Presburger formulas");
  f_cmd->require_subcommand(1);

  {
    auto* c = f_cmd->add_subcommand("eval", "evaluate a formula on explicit tuples");
    auto formula = std::make_shared<std::string>();
    auto xs = std::make_shared<std::string>();
    auto ys = std::make_shared<std::string>();
    c->add_option("--formula", *formula, "'lineq m n r' or 'cong m r'")->required();
    c->add_option("--x", *xs, "x tuple, comma separated")->required();
    c->add_option("--y", *ys, "y tuple, comma separated");
    c->callback([&report, formula, xs, ys] {
      AtomicFormula f = parse_formula(*formula);
      auto xv = parse_big_list(*xs);
      auto yv = parse_big_list(*ys);
      report = Json{{"formula", f}, {"value", eval(f, xv, yv)}};
    });
  }
  {
    auto* c = f_cmd->add_subcommand("threshold", "eventual-indiscernibility threshold k_phi");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto formula = std::make_shared<std::string>();
    c->add_option("--formula", *formula, "'lineq m n r' or 'cong m r'")->required();
    c->callback([&report, in, formula] {
      report = threshold(in->load(), parse_formula(*formula));
    });
  }
  {
    auto* c = f_cmd->add_subcommand("ei-check", "indiscernibility report for a formula list");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto formulas = std::make_shared<std::vector<std::string>>();
    auto mode = std::make_shared<std::string>("injective");
    c->add_option("--formula", *formulas, "formula text, repeatable")->required();
    c->add_option("--mode", *mode, "increasing | injective")
        ->check(CLI::IsMember({"increasing", "injective"}));
    c->callback([&report, in, formulas, mode] {
      std::vector<AtomicFormula> fs;
      for (const auto& s : *formulas) fs.push_back(parse_formula(s));
      report = ei_check(in->load(), fs,
                        *mode == "increasing" ? TupleMode::Increasing : TupleMode::Injective);
    });
  }
  {
    auto* c = f_cmd->add_subcommand("pattern", "equality-pattern truth table at a threshold");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto formula = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(0);
    c->add_option("--formula", *formula, "'lineq m n r' or 'cong m r'")->required();
    c->add_option("--k", *k, "tail start index")->required();
    c->callback([&report, in, formula, k] {
      PatternTable t = equality_pattern_table(in->load(), parse_formula(*formula), *k);
      if (!t.stable)
        throw DomainErrorWithDetail("pattern unstable at k=" + std::to_string(t.k),
                                    Json(t));
      report = t;
    });
  }
  {
    auto* c = f_cmd->add_subcommand("extract", "eventually indiscernible subsequence extraction");
    auto base = std::make_shared<std::string>();
    auto base_file = std::make_shared<std::string>();
    auto formulas = std::make_shared<std::vector<std::string>>();
    auto tail = std::make_shared<std::size_t>(1);
    auto budget = std::make_shared<std::uint64_t>(20'000'000);
    c->add_option("--base", *base, "inline base integers, comma separated");
    c->add_option("--base-file", *base_file, "file of base integers");
    c->add_option("--formula", *formulas, "formula text, repeatable")->required();
    c->add_option("--tail", *tail, "requested tail length")->required();
    c->add_option("--budget", *budget, "tuple-evaluation work budget");
    c->callback([&report, base, base_file, formulas, tail, budget] {
      if (base->empty() == base_file->empty())
        throw Error("extract needs exactly one of --base, --base-file");
      auto b = base->empty() ? parse_big_list(read_file(*base_file)) : parse_big_list(*base);
      std::vector<AtomicFormula> fs;
      for (const auto& s : *formulas) fs.push_back(parse_formula(s));
      report = extract_ei_subsequence(b, fs, *tail, *budget);
    });
  }

  // --- solve -----------------------------------------------------------
  auto* s_cmd = app.add_subcommand("solve", "bounded solution enumeration");
  s_cmd->require_subcommand(1);

  {
    auto* c = s_cmd->add_subcommand("lineq", "x_1+..+x_m = y_1+..+y_n + r over a truncation");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto m = std::make_shared<std::uint32_t>(1);
    auto n = std::make_shared<std::uint32_t>(1);
    auto r = std::make_shared<std::int64_t>(0);
    auto differ = std::make_shared<bool>(false);
    c->add_option("-m", *m, "x arity")->required();
    c->add_option("-n", *n, "y arity")->required();
    c->add_option("-r", *r, "constant");
    c->add_flag("--require-max-differ", *differ, "keep only max-value-differing solutions");
    c->callback([&report, in, m, n, r, differ] {
      SparseSequence seq = in->load();
      SolutionSet set = enumerate_lineq_solutions(seq, *m, *n, *r, *differ);
      Json j = set;
      Json rows = Json::array();
      for (const auto& sol : set.solutions) {
        Json xv = Json::array(), yv = Json::array();
        for (auto i : sol.xs) xv.push_back(big_json(seq.terms[i]));
        for (auto i : sol.ys) yv.push_back(big_json(seq.terms[i]));
        rows.push_back(Json{{"x_values", xv}, {"y_values", yv}});
      }
      j["solution_values"] = rows;
      report = j;
    });
  }
  {
    auto* c = s_cmd->add_subcommand("combo", "multiplier*target = sum c_i v_i, distinct v_i");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto coeffs = std::make_shared<std::string>();
    auto mult = std::make_shared<std::uint64_t>(1);
    auto target = std::make_shared<std::string>();
    c->add_option("--coeffs", *coeffs, "nonzero coefficients, comma separated")->required();
    c->add_option("--multiplier", *mult, "m >= 1");
    c->add_option("--target", *target, "target integer a")->required();
    c->callback([&report, in, coeffs, mult, target] {
      auto cs = parse_i64_list(*coeffs);
      BigInt a = parse_bigint(*target);
      auto sols = solve_combination(in->load(), cs, *mult, a);
      Json rows = Json::array();
      for (const auto& tup : sols) rows.push_back(big_list_json(tup));
      report = Json{{"coeffs", cs},
                    {"multiplier", *mult},
                    {"target", big_json(a)},
                    {"count", sols.size()},
                    {"solutions", rows}};
    });
  }
  {
    auto* c = s_cmd->add_subcommand("facbase", "factorial-base digits of t");
    auto t = std::make_shared<std::string>();
    c->add_option("--t", *t, "nonnegative integer")->required();
    c->callback([&report, t] {
      BigInt v = parse_bigint(*t);
      auto digits = factorial_base(v);
      report = Json{{"t", big_json(v)},
                    {"digits", digits},
                    {"reexpanded", big_json(factorial_base_value(digits))}};
    });
  }

  // --- codec -----------------------------------------------------------
  auto* c_cmd = app.add_subcommand("codec", "graph <-> unary predicate coding");
  c_cmd->require_subcommand(1);

  {
    auto* c = c_cmd->add_subcommand("encode", "A = Q ∪ {a+b : (a,b) ∈ E}");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto edges = std::make_shared<std::string>();
    auto edges_file = std::make_shared<std::string>();
    c->add_option("--edges", *edges, "edge list, 'u v' pairs separated by , or ;");
    c->add_option("--edges-file", *edges_file, "edge-list file, one 'u v' per line");
    c->callback([&report, in, edges, edges_file] {
      SparseSequence seq = in->load();
      report = encode(seq, graph_from_flags(seq, *edges, *edges_file));
    });
  }
  {
    auto* c = c_cmd->add_subcommand("decode", "definable decoding of a value set");
    auto values = std::make_shared<std::string>();
    auto values_file = std::make_shared<std::string>();
    auto truth = std::make_shared<SeqInput>();
    auto truth_edges = std::make_shared<std::string>();
    auto truth_edges_file = std::make_shared<std::string>();
    c->add_option("--values", *values, "inline value set, comma separated");
    c->add_option("--values-file", *values_file, "file of newline-delimited values");
    c->add_option("--truth-seq", truth->spec, "ground-truth sequence literal");
    c->add_option("--truth-seq-file", truth->file, "ground-truth sequence file");
    c->add_option("--truth-edges", *truth_edges, "ground-truth edge list");
    c->add_option("--truth-edges-file", *truth_edges_file, "ground-truth edge-list file");
    c->callback([&report, values, values_file, truth, truth_edges, truth_edges_file] {
      if (values->empty() == values_file->empty())
        throw Error("decode needs exactly one of --values, --values-file");
      auto vals =
          values->empty() ? parse_big_list(read_file(*values_file)) : parse_big_list(*values);
      std::optional<std::pair<SparseSequence, Graph>> gt;
      if (!truth->spec.empty() || !truth->file.empty()) {
        SparseSequence seq = truth->load();
        gt = std::make_pair(seq, graph_from_flags(seq, *truth_edges, *truth_edges_file));
      }
      report = decode(vals, gt);
    });
  }
  {
    auto* c = c_cmd->add_subcommand("roundtrip", "encode then decode against ground truth");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto edges = std::make_shared<std::string>();
    auto edges_file = std::make_shared<std::string>();
    c->add_option("--edges", *edges, "edge list, 'u v' pairs separated by , or ;");
    c->add_option("--edges-file", *edges_file, "edge-list file");
    c->callback([&report, in, edges, edges_file] {
      SparseSequence seq = in->load();
      report = roundtrip(seq, graph_from_flags(seq, *edges, *edges_file));
    });
  }
  {
    auto* c = c_cmd->add_subcommand("sumset", "fold-wise multiset sums of the terms");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto fold = std::make_shared<std::uint32_t>(2);
    c->add_option("--fold", *fold, "multiset size (>= 2)")->required();
    c->callback([&report, in, fold] {
      auto values = sumset(in->load(), *fold);
      report = Json{{"fold", *fold}, {"count", values.size()}, {"values", big_list_json(values)}};
    });
  }
  {
    auto* c = c_cmd->add_subcommand("urank", "U-rank-n set construction from factorials");
    auto n = std::make_shared<std::uint64_t>(1);
    auto count = std::make_shared<std::uint64_t>(1);
    c->add_option("--n", *n, "rank parameter (>= 1)")->required();
    c->add_option("--count", *count, "factorials used: n! .. (n+count-1)!")->required();
    c->callback([&report, n, count] { report = urank_construction(*n, *count); });
  }
  {
    auto* c = c_cmd->add_subcommand("inject", "injectivity of size-n multiset sums");
    auto in = std::make_shared<SeqInput>();
    in->attach(c);
    auto n = std::make_shared<std::uint32_t>(1);
    c->add_option("--n", *n, "multiset size")->required();
    c->callback([&report, in, n] { report = multiset_sum_injectivity(in->load(), *n); });
  }

  // --- ma --------------------------------------------------------------
  auto* m_cmd = app.add_subcommand("ma", "mutual-algebraicity bounds");
  m_cmd->require_subcommand(1);

  auto add_relation_flags = [](CLI::App* c, auto rel_json, auto rel_file, auto universe,
                               auto edges, auto edges_file) {
    c->add_option("--relation", *rel_json, "relation as inline JSON (universe, arity, tuples)");
    c->add_option("--relation-file", *rel_file, "relation JSON file");
    c->add_option("--universe", *universe, "graph mode: universe elements, comma separated");
    c->add_option("--edges", *edges, "graph mode: 'u v' value pairs, symmetrized");
    c->add_option("--edges-file", *edges_file, "graph mode: edge-list file");
  };
  auto load_relation = [](const std::string& rel_json, const std::string& rel_file,
                          const std::string& universe, const std::string& edges,
                          const std::string& edges_file) -> FiniteRelation {
    int modes = int(!rel_json.empty()) + int(!rel_file.empty()) +
                int(!edges.empty() || !edges_file.empty());
    if (modes != 1)
      throw Error("give exactly one of --relation, --relation-file, or graph edges");
    if (!rel_json.empty())
      return parse_json(rel_json, "--relation").get<FiniteRelation>();
    if (!rel_file.empty())
      return parse_json(read_file(rel_file), rel_file).get<FiniteRelation>();
    std::string text = edges_file.empty() ? edges : read_file(edges_file);
    std::vector<std::vector<std::int64_t>> tuples;
    std::vector<std::int64_t> uni =
        universe.empty() ? std::vector<std::int64_t>{} : parse_i64_list(universe);
    std::string norm = text;
    for (char& ch : norm)
      if (ch == ',' || ch == ';') ch = '\n';
    std::istringstream lines(norm);
    std::string line;
    while (std::getline(lines, line)) {
      std::istringstream is(line);
      std::int64_t u, v;
      if (!(is >> u)) continue;
      if (!(is >> v)) throw Error("edge line needs two values: '" + line + "'");
      tuples.push_back({u, v});
      tuples.push_back({v, u});
      if (universe.empty()) {
        uni.push_back(u);
        uni.push_back(v);
      }
    }
    return FiniteRelation::make(uni, 2, tuples);
  };

  for (bool profile : {false, true}) {
    auto* c = m_cmd->add_subcommand(profile ? "profile" : "bound",
                                    profile ? "per-position bounds and characterizations"
                                            : "mutual-algebraicity bound with witness");
    auto rel_json = std::make_shared<std::string>();
    auto rel_file = std::make_shared<std::string>();
    auto universe = std::make_shared<std::string>();
    auto edges = std::make_shared<std::string>();
    auto edges_file = std::make_shared<std::string>();
    add_relation_flags(c, rel_json, rel_file, universe, edges, edges_file);
    c->callback([&report, profile, rel_json, rel_file, universe, edges, edges_file,
                 load_relation] {
      FiniteRelation r =
          load_relation(*rel_json, *rel_file, *universe, *edges, *edges_file);
      if (profile)
        report = ma_profile(r);
      else
        report = ma_bound(r);
    });
  }

  // let trailing global flags (--table, --out) reach the top-level app
  auto enable_fallthrough = [](auto&& self, CLI::App* node) -> void {
    for (CLI::App* sub : node->get_subcommands({})) {
      sub->fallthrough(true);
      self(self, sub);
    }
  };
  enable_fallthrough(enable_fallthrough, &app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  out.table = table_flag->count() > 0;
  emit(out, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const DomainErrorWithDetail& e) {
    std::cout << Json{{"error", e.what()}, {"detail", e.detail}}.dump(2) << "\n";
    return 1;
  } catch (const vaporlab::Error& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
