#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "revcomp/automaton.hpp"
#include "revcomp/error.hpp"
#include "revcomp/experiment_logic.hpp"
#include "revcomp/permutation.hpp"
#include "revcomp/qubit.hpp"
#include "revcomp/text.hpp"
#include "revcomp/zeno.hpp"

namespace revcomp::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for flag combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kWordHelp =
    "Input word: symbol names joined without separators when every symbol is a "
    "single character (e.g. 2222), otherwise comma-separated (e.g. a,b,a)";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ReversibleAutomaton load_automaton(const std::string& path) {
  return ReversibleAutomaton::validate(parse_automaton(read_file(path)));
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const char* subcommand) {
  for (const char* f : allowed)
    if (format == f) return;
  throw UsageError("--format " + format + " is not supported by '" + subcommand + "'");
}

Pair parse_pair(const ReversibleAutomaton& a, const std::string& spec) {
  const auto parts = text::split(spec, ',');
  if (parts.size() != 2) throw UsageError("--start expects 'state,symbol', got '" + spec + "'");
  return {a.state(text::trim(parts[0])), a.symbol(text::trim(parts[1]))};
}

std::string word_text(const ReversibleAutomaton& a, const std::vector<SymbolId>& word) {
  const bool single = std::all_of(a.inputs().begin(), a.inputs().end(),
                                  [](const std::string& s) { return s.size() == 1; });
  std::vector<std::string> names;
  for (SymbolId i : word) names.push_back(a.name(i));
  return text::join(names, single ? "" : ",");
}

// validate -------------------------------------------------------------------

void cmd_validate(const std::string& path, const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured", "dot", "csv"}, "validate");
  const auto a = load_automaton(path);
  const Permutation u = to_permutation(a);
  if (format == "text") {
    out << "valid reversible automaton, " << a.num_states() << " states, " << a.num_inputs()
        << " symbols, permutation order " << order(u) << "\n";
  } else if (format == "structured") {
    json doc = json::parse(format_automaton(a));
    doc["permutation"] = format_one_line(u);
    doc["order"] = order(u);
    out << doc.dump(2) << "\n";
  } else if (format == "dot") {
    out << automaton_to_dot(a);
  } else {
    out << "state,input,next_state,output,index,image\n";
    for (std::size_t k = 0; k < a.num_pairs(); ++k) {
      const Pair from = a.pair_at(k);
      const Pair to = step(a, from);
      out << a.name(from.state) << ',' << a.name(from.symbol) << ',' << a.name(to.state) << ','
          << a.name(to.symbol) << ',' << k + 1 << ',' << u(k) + 1 << "\n";
    }
  }
}

// evolve ---------------------------------------------------------------------

void cmd_evolve(const std::string& path, std::uint64_t steps, const std::string& start,
                bool backwards, const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured", "csv"}, "evolve");
  auto a = load_automaton(path);
  if (backwards) a = reverse(a);

  if (!start.empty()) {
    const Trajectory t = run_feedback(a, parse_pair(a, start), steps);
    if (format == "text") {
      std::vector<std::string> parts;
      for (const Pair& p : t.steps) parts.push_back(format_pair(a, p));
      out << text::join(parts, " -> ") << "\n";
    } else if (format == "csv") {
      out << "step,state,symbol\n";
      for (std::size_t n = 0; n < t.steps.size(); ++n)
        out << n << ',' << a.name(t.steps[n].state) << ',' << a.name(t.steps[n].symbol) << "\n";
    } else {
      json doc = json::array();
      for (const Pair& p : t.steps) doc.push_back({a.name(p.state), a.name(p.symbol)});
      out << json{{"trajectory", doc}}.dump(2) << "\n";
    }
    return;
  }

  const LabelVector psi = canonical_labels(a);
  std::vector<LabelVector> columns;
  for (std::uint64_t n = 0; n <= steps; ++n) columns.push_back(evolve_labels(a, psi, n));
  if (format == "text") {
    for (std::uint64_t n = 0; n <= steps; ++n) {
      std::vector<std::string> parts;
      for (const Pair& p : columns[n]) parts.push_back(format_pair(a, p));
      out << "N=" << n << ": " << text::join(parts, " ") << "\n";
    }
  } else if (format == "csv") {
    out << "index";
    for (std::uint64_t n = 0; n <= steps; ++n) out << ",N" << n;
    out << "\n";
    for (std::size_t k = 0; k < psi.size(); ++k) {
      out << k + 1;
      for (const auto& col : columns) out << ",\"" << format_pair(a, col[k]) << '"';
      out << "\n";
    }
  } else {
    json doc = json::array();
    for (const auto& col : columns) {
      json c = json::array();
      for (const Pair& p : col) c.push_back(format_pair(a, p));
      doc.push_back(c);
    }
    out << json{{"columns", doc}}.dump(2) << "\n";
  }
}

// experiment -----------------------------------------------------------------

void cmd_experiment(const std::string& path, const std::optional<std::string>& word,
                    std::size_t max_len, const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured", "csv"}, "experiment");
  const auto a = load_automaton(path);
  std::vector<WitnessedPartition> rows;
  if (word) {
    const auto w = parse_word(a, *word);
    rows.push_back({experiment_partition(a, w), w});
  } else if (max_len > 0) {
    rows = partitions_up_to(a, max_len);
  } else {
    throw UsageError("experiment needs --word or --max-len");
  }
  if (format == "text") {
    for (const auto& r : rows) {
      out << format_partition(r.partition);
      if (!word) out << " via " << word_text(a, r.witness);
      out << "\n";
    }
  } else if (format == "csv") {
    out << "word,partition\n";
    for (const auto& r : rows)
      out << word_text(a, r.witness) << ",\"" << format_partition(r.partition) << "\"\n";
  } else {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"word", word_text(a, r.witness)}, {"partition", format_partition(r.partition)}});
    out << json{{"partitions", doc}}.dump(2) << "\n";
  }
}

// logic ----------------------------------------------------------------------

void cmd_logic(const std::string& path, const std::vector<std::string>& words, std::size_t max_len,
               const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured", "dot"}, "logic");
  const auto a = load_automaton(path);
  std::vector<WitnessedPartition> sources;
  if (!words.empty()) {
    for (const auto& w : words) {
      const auto word = parse_word(a, w);
      sources.push_back({experiment_partition(a, word), word});
    }
  } else {
    sources = partitions_up_to(a, max_len);
  }
  std::vector<Partition> partitions;
  for (const auto& s : sources) partitions.push_back(s.partition);
  const PartitionLogic logic = build_partition_logic(partitions);
  const bool mo2 = is_mo2(logic);
  const auto triple = find_nondistributive_triple(logic);

  if (format == "dot") {
    out << logic_to_dot(logic);
    return;
  }
  if (format == "structured") {
    json doc = json::parse(logic_to_json(logic));
    json src = json::array();
    for (const auto& s : sources)
      src.push_back({{"word", word_text(a, s.witness)}, {"partition", format_partition(s.partition)}});
    doc["partitions"] = src;
    doc["mo2"] = mo2;
    if (triple) {
      doc["nondistributive_triple"] = {logic.format_element((*triple)[0]),
                                       logic.format_element((*triple)[1]),
                                       logic.format_element((*triple)[2])};
    } else {
      doc["nondistributive_triple"] = nullptr;
    }
    out << doc.dump(2) << "\n";
    return;
  }
  out << "partitions: " << sources.size() << "\n";
  for (const auto& s : sources)
    out << "  " << format_partition(s.partition) << " via " << word_text(a, s.witness) << "\n";
  std::vector<std::string> elems;
  for (std::size_t x = 0; x < logic.size(); ++x) elems.push_back(logic.format_element(x));
  out << "elements: " << logic.size() << " " << text::join(elems, " ") << "\n";
  out << "MO2: " << (mo2 ? "yes" : "no") << "\n";
  if (triple) {
    const auto [x, y, z] = *triple;
    out << "nondistributive triple: x=" << logic.format_element(x)
        << " y=" << logic.format_element(y) << " z=" << logic.format_element(z) << "\n";
  } else {
    out << "nondistributive triple: none\n";
  }
}

// permgroup ------------------------------------------------------------------

void describe_permutation(const Permutation& p, std::ostream& out) {
  out << "map: " << format_one_line(p) << "\n"
      << "cycles: " << format_cycles(p) << "\n"
      << "order: " << order(p) << "\n"
      << "inverse: " << format_one_line(inverse(p)) << "\n"
      << "matrix:\n" << format_matrix(p.matrix());
}

void cmd_permgroup(std::size_t n, const std::string& map, const std::string& then,
                   const std::string& matrix_path, const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured", "csv"}, "permgroup");
  const int chosen = (n > 0) + !map.empty() + !matrix_path.empty();
  if (chosen != 1) throw UsageError("permgroup needs exactly one of --n, --map, --matrix");
  if (!then.empty() && map.empty()) throw UsageError("--then requires --map");

  if (n > 0) {
    const auto all = enumerate_permutations(n);
    if (format == "text") {
      for (const auto& p : all) out << format_one_line(p) << "\n";
      out << "count: " << all.size() << "\n";
    } else if (format == "csv") {
      out << "index,map,order\n";
      for (std::size_t k = 0; k < all.size(); ++k)
        out << k + 1 << ",\"" << format_one_line(all[k]) << "\"," << order(all[k]) << "\n";
    } else {
      json doc = json::array();
      for (const auto& p : all) doc.push_back(p.one_line());
      out << json{{"degree", n}, {"count", all.size()}, {"permutations", doc}}.dump(2) << "\n";
    }
    return;
  }

  Permutation p = Permutation::identity(1);
  bool doubly_stochastic = true;
  if (!map.empty()) {
    p = parse_one_line(map);
    if (!then.empty()) p = compose(p, parse_one_line(then));
  } else {
    const SquareMatrix m = parse_matrix(read_file(matrix_path));
    doubly_stochastic = is_doubly_stochastic(m, 0.0);
    p = perm_from_matrix(m);
  }
  if (format == "structured") {
    out << json{{"map", p.one_line()},
                {"cycles", format_cycles(p)},
                {"order", order(p)},
                {"inverse", inverse(p).one_line()},
                {"doubly_stochastic", doubly_stochastic}}
               .dump(2)
        << "\n";
  } else if (format == "csv") {
    out << "index,image,inverse_image\n";
    const Permutation inv = inverse(p);
    for (std::size_t i = 0; i < p.degree(); ++i) out << i + 1 << ',' << p(i) + 1 << ',' << inv(i) + 1 << "\n";
  } else {
    describe_permutation(p, out);
  }
}

// zeno -----------------------------------------------------------------------

void cmd_zeno(double k, const std::optional<std::uint64_t>& t, const std::optional<double>& budget,
              const std::string& program, const std::string& input, const std::string& format,
              std::ostream& out) {
  require_format(format, {"text", "structured"}, "zeno");
  const ZenoSchedule sched(k);
  if (!program.empty() && !budget) throw UsageError("--program requires --budget");
  if (!t && !budget) throw UsageError("zeno needs --t and/or --budget");
  json doc;
  std::vector<std::string> lines;
  doc["k"] = k;
  doc["tau_inf"] = limit_time(sched);
  if (t) {
    const double tau = proper_time(sched, *t);
    lines.push_back("tau_" + std::to_string(*t) + " = " + text::shortest(tau) +
                    ", tau_inf = " + text::shortest(limit_time(sched)));
    doc["t"] = *t;
    doc["tau_t"] = tau;
  }
  if (budget && program.empty()) {
    const CycleCount c = cycles_within(sched, *budget);
    lines.push_back("cycles within " + text::shortest(*budget) + ": " +
                    (c.is_unbounded() ? std::string("unbounded") : std::to_string(c.value())));
    doc["budget"] = *budget;
    doc["cycles"] = c.is_unbounded() ? json("unbounded") : json(c.value());
  }
  if (!program.empty()) {
    ProgramSpace space;
    for (const char* name : {"const-halts", "const-loops", "exact"}) space.add(decider_by_name(name));
    const ToyProgram prog = decode_program(program);
    if (const auto* d = std::get_if<DiagonalProgram>(&prog); d && !space.contains(d->decider)) {
      space.add(decider_by_name(d->decider));
    }
    const ZenoOutcome outcome = run_zeno(space, prog, input, sched, *budget);
    lines.push_back(format_outcome(outcome));
    doc["budget"] = *budget;
    doc["outcome"] = format_outcome(outcome);
  }
  if (format == "structured") {
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
}

// diagonal -------------------------------------------------------------------

void cmd_diagonal(const std::string& decider_name, const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured"}, "diagonal");
  ProgramSpace space;
  const DiagonalReport report = diagonal_adversary(space, decider_by_name(decider_name));
  if (format == "structured") {
    out << json{{"decider", decider_name},
                {"adversary", report.adversary_encoding},
                {"verdict", to_string(report.claimed)},
                {"actual", format_outcome(report.actual)},
                {"decider_wrong", report.decider_wrong}}
               .dump(2)
        << "\n";
  } else {
    out << "decider: " << decider_name << "\n" << format_report(report);
  }
}

// qubit-demo -----------------------------------------------------------------

void cmd_qubit_demo(const std::string& format, std::ostream& out) {
  require_format(format, {"text", "structured"}, "qubit-demo");
  const auto d = OneQubitOperator::not_gate();
  const auto eig = eigensystem_not();
  const Qubit star = fixed_point_not();
  const auto probs = measure_probabilities(star);
  const double residual = distance(d.apply(star), star);
  const auto classical = classical_fixed_point_search();
  if (format == "structured") {
    json e = json::array();
    for (const auto& [lambda, v] : eig) e.push_back({{"eigenvalue", lambda}, {"state", format_qubit(v)}});
    out << json{{"operator", format_operator(d)},
                {"eigensystem", e},
                {"fixed_point", format_qubit(star)},
                {"fixed_point_residual", residual},
                {"p0", probs.p0},
                {"p1", probs.p1},
                {"classical_fixed_points", classical.fixed_points}}
               .dump(2)
        << "\n";
    return;
  }
  out << "D = NOT =\n" << format_operator(d) << "\n";
  for (const auto& [lambda, v] : eig) out << "eigenvalue " << text::shortest(lambda) << ": " << format_qubit(v) << "\n";
  out << "fixed point |*>: " << format_qubit(star) << "\n"
      << "|D|*> - |*>| = " << text::shortest(residual) << "\n"
      << "P(0) = " << text::shortest(probs.p0) << ", P(1) = " << text::shortest(probs.p1) << "\n"
      << "classical: NOT 0 = " << classical.images[0] << ", NOT 1 = " << classical.images[1]
      << ", fixed points: " << (classical.fixed_points.empty() ? "none" : "some") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible automata, partition logics, Zeno schedules and the qubit fixed point",
               "revcomp"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "structured", "dot", "csv"};
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
  };

  std::string path;

  auto* validate = app.add_subcommand("validate", "Check that an automaton file is reversible");
  validate->add_option("file", path, "Automaton file")->required();
  add_format(validate);

  std::uint64_t steps = 0;
  std::string start;
  bool backwards = false;
  auto* evolve = app.add_subcommand("evolve", "Evolve the label vector or a fed-back trajectory");
  evolve->add_option("file", path, "Automaton file")->required();
  evolve->add_option("--steps", steps, "Number of evolution steps")->required();
  evolve->add_option("--start", start, "Start pair 'state,symbol' for a feedback trajectory");
  evolve->add_flag("--reverse", backwards, "Run the inverse evolution");
  add_format(evolve);

  std::optional<std::string> word;
  std::size_t max_len = 0;
  auto* experiment = app.add_subcommand("experiment", "Partition states by output under input words");
  experiment->add_option("file", path, "Automaton file")->required();
  auto* word_opt = experiment->add_option("--word", word, kWordHelp);
  experiment->add_option("--max-len", max_len, "All distinct partitions for words up to this length")
      ->excludes(word_opt);
  add_format(experiment);

  std::vector<std::string> logic_words;
  std::size_t logic_len = 1;
  auto* logic = app.add_subcommand("logic", "Paste experiment partitions into a partition logic");
  logic->add_option("file", path, "Automaton file")->required();
  auto* words_opt = logic->add_option("--word", logic_words, std::string(kWordHelp) + "; repeatable");
  logic->add_option("--max-len", logic_len, "Use every partition from words up to this length")
      ->excludes(words_opt)
      ->check(CLI::PositiveNumber);
  add_format(logic);

  std::size_t degree = 0;
  std::string map, then, matrix_path;
  auto* permgroup = app.add_subcommand("permgroup", "Permutation group utilities");
  permgroup->add_option("--n", degree, "Enumerate all permutations of this degree");
  permgroup->add_option("--map", map, "One-line map, e.g. 3,2,4,1");
  permgroup->add_option("--then", then, "Compose --map with this map (applied second)");
  permgroup->add_option("--matrix", matrix_path, "Matrix file: n, then n rows");
  add_format(permgroup);

  double k = 0.5;
  std::optional<std::uint64_t> cycle;
  std::optional<double> budget;
  std::string program, input = "0";
  auto* zeno = app.add_subcommand("zeno", "Geometric proper-time schedule and limit-complete runs");
  zeno->add_option("--k", k, "Squeeze factor, 0 < k < 1");
  zeno->add_option("--t", cycle, "Report proper time after t cycles");
  zeno->add_option("--budget", budget, "Proper-time budget");
  zeno->add_option("--program", program, "Program encoding to run (table:... or diagonal:...)");
  zeno->add_option("--input", input, "Input encoding for --program");
  add_format(zeno);

  std::string decider = "exact";
  auto* diagonal = app.add_subcommand("diagonal", "Build the diagonal adversary against a decider");
  diagonal->add_option("--decider", decider, "const-halts, const-loops, bounded:N or exact");
  add_format(diagonal);

  auto* qubit = app.add_subcommand("qubit-demo", "NOT operator, eigensystem and fixed point");
  add_format(qubit);

  std::vector<std::string> argv_storage{"revcomp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (validate->parsed()) cmd_validate(path, format, out);
    else if (evolve->parsed()) cmd_evolve(path, steps, start, backwards, format, out);
    else if (experiment->parsed()) cmd_experiment(path, word, max_len, format, out);
    else if (logic->parsed()) cmd_logic(path, logic_words, logic_len, format, out);
    else if (permgroup->parsed()) cmd_permgroup(degree, map, then, matrix_path, format, out);
    else if (zeno->parsed()) cmd_zeno(k, cycle, budget, program, input, format, out);
    else if (diagonal->parsed()) cmd_diagonal(decider, format, out);
    else if (qubit->parsed()) cmd_qubit_demo(format, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace revcomp::cli
