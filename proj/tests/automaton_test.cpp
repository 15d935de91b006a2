#include "revcomp/automaton.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "revcomp/error.hpp"

namespace revcomp {
namespace {

using namespace ::revcomp::testing;

const ReversibleAutomaton& t1() {
  static const auto a = ReversibleAutomaton::validate(table1());
  return a;
}
const ReversibleAutomaton& t2() {
  static const auto a = ReversibleAutomaton::validate(table2());
  return a;
}

Pair at(const ReversibleAutomaton& a, const char* s, const char* i) {
  return {a.state(s), a.symbol(i)};
}

std::vector<std::string> render(const ReversibleAutomaton& a, const std::vector<Pair>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(format_pair(a, p));
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected revcomp::Error";
  return ErrorCode::ParseError;
}

TEST(Validate, FixturesAreReversible) {
  EXPECT_EQ(t1().num_pairs(), 4u);
  EXPECT_EQ(t2().num_pairs(), 6u);
}

TEST(Validate, CollisionReportsWitness) {
  auto t = identity_tables(2, 2);
  t.delta["s1"]["2"] = "s1";
  t.lambda["s1"]["2"] = "1";
  try {
    ReversibleAutomaton::validate(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInjective);
    EXPECT_NE(std::string(e.what()).find("(s1,1) and (s1,2) both map to (s1,1)"), std::string::npos);
  }
}

TEST(Validate, IncompleteAndUnknownEntries) {
  auto missing = table1();
  missing.lambda["s2"].erase("2");
  EXPECT_EQ(code_of([&] { ReversibleAutomaton::validate(missing); }), ErrorCode::IncompleteTable);

  auto bad_state = table1();
  bad_state.delta["s1"]["1"] = "s9";
  EXPECT_EQ(code_of([&] { ReversibleAutomaton::validate(bad_state); }), ErrorCode::UnknownState);

  auto bad_symbol = table1();
  bad_symbol.lambda["s1"]["1"] = "7";
  EXPECT_EQ(code_of([&] { ReversibleAutomaton::validate(bad_symbol); }), ErrorCode::UnknownSymbol);

  auto extra_row = table1();
  extra_row.delta["s3"]["1"] = "s1";
  EXPECT_EQ(code_of([&] { ReversibleAutomaton::validate(extra_row); }), ErrorCode::UnknownState);

  auto dup = table1();
  dup.states = {"s1", "s1"};
  EXPECT_EQ(code_of([&] { ReversibleAutomaton::validate(dup); }), ErrorCode::IncompleteTable);

  EXPECT_EQ(code_of([] { ReversibleAutomaton::validate(AutomatonTables{}); }),
            ErrorCode::IncompleteTable);
}

TEST(ToPermutation, FixtureMatrices) {
  EXPECT_EQ(to_permutation(t1()).one_line(), (std::vector<std::size_t>{3, 2, 4, 1}));
  EXPECT_EQ(to_permutation(t2()).one_line(), (std::vector<std::size_t>{2, 6, 3, 1, 5, 4}));
  EXPECT_TRUE(to_permutation(ReversibleAutomaton::validate(identity_tables(1, 5))).is_identity());
}

TEST(FromPermutation, Examples) {
  EXPECT_EQ(from_permutation(Permutation::from_one_line({3, 2, 4, 1}), 2, 2), t1());
  EXPECT_EQ(from_permutation(Permutation::identity(4), 2, 2),
            ReversibleAutomaton::validate(identity_tables(2, 2)));

  const auto p = Permutation::from_one_line({4, 1, 3, 5, 2});
  const auto single = from_permutation(p, 1, 5);
  ASSERT_EQ(single.num_states(), 1u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(single.next_state(StateId{0}, SymbolId{i}), StateId{0});
    EXPECT_EQ(index(single.output(StateId{0}, SymbolId{i})), p(i));
  }
  EXPECT_EQ(code_of([] { from_permutation(Permutation::identity(6), 4, 2); }),
            ErrorCode::DimensionMismatch);
}

TEST(Step, Examples) {
  EXPECT_EQ(step(t2(), at(t2(), "s1", "1")), at(t2(), "s1", "2"));
  EXPECT_EQ(step(t1(), at(t1(), "s2", "2")), at(t1(), "s1", "1"));
  const auto id = ReversibleAutomaton::validate(identity_tables(3, 2));
  for (std::size_t k = 0; k < id.num_pairs(); ++k) EXPECT_EQ(step(id, id.pair_at(k)), id.pair_at(k));
  EXPECT_EQ(code_of([] { step(t1(), {StateId{5}, SymbolId{0}}); }), ErrorCode::UnknownState);
  EXPECT_EQ(code_of([] { step(t1(), {StateId{0}, SymbolId{2}}); }), ErrorCode::UnknownSymbol);
  EXPECT_EQ(code_of([] { t1().state("s7"); }), ErrorCode::UnknownState);
}

TEST(RunFeedback, Examples) {
  const auto traj = run_feedback(t1(), at(t1(), "s1", "1"), 3);
  EXPECT_EQ(render(t1(), traj.steps),
            (std::vector<std::string>{"(s1,1)", "(s2,1)", "(s2,2)", "(s1,1)"}));
  const auto four = run_feedback(t2(), at(t2(), "s1", "1"), 4);
  EXPECT_EQ(four.steps.back(), at(t2(), "s1", "1"));
  const auto zero = run_feedback(t2(), at(t2(), "s3", "2"), 0);
  ASSERT_EQ(zero.steps.size(), 1u);
  EXPECT_EQ(zero.steps[0], at(t2(), "s3", "2"));
}

TEST(EvolveLabels, FourStepCycleOfThreeStateFixture) {
  const auto psi = canonical_labels(t2());
  const std::vector<std::vector<std::string>> columns{
      {"(s1,1)", "(s1,2)", "(s2,1)", "(s2,2)", "(s3,1)", "(s3,2)"},
      {"(s1,2)", "(s3,2)", "(s2,1)", "(s1,1)", "(s3,1)", "(s2,2)"},
      {"(s3,2)", "(s2,2)", "(s2,1)", "(s1,2)", "(s3,1)", "(s1,1)"},
      {"(s2,2)", "(s1,1)", "(s2,1)", "(s3,2)", "(s3,1)", "(s1,2)"},
      {"(s1,1)", "(s1,2)", "(s2,1)", "(s2,2)", "(s3,1)", "(s3,2)"}};
  for (std::uint64_t n = 0; n < columns.size(); ++n) {
    EXPECT_EQ(render(t2(), evolve_labels(t2(), psi, n)), columns[n]) << "N=" << n;
  }
}

TEST(EvolveLabels, DimensionMismatch) {
  EXPECT_EQ(code_of([] { evolve_labels(t2(), canonical_labels(t1()), 1); }),
            ErrorCode::DimensionMismatch);
}

TEST(RunWord, Examples) {
  const auto w1 = parse_word(t2(), "1");
  const auto r1 = run_word(t2(), t2().state("s2"), w1);
  EXPECT_EQ(r1.outputs, (std::vector<SymbolId>{t2().symbol("1")}));
  EXPECT_EQ(r1.final_state, t2().state("s2"));

  // s1 -2/2-> s3 -2/2-> s2 -2/1-> s1 -2/2-> s3
  const auto r2 = run_word(t2(), t2().state("s1"), parse_word(t2(), "2222"));
  const auto two = t2().symbol("2"), one = t2().symbol("1");
  EXPECT_EQ(r2.outputs, (std::vector<SymbolId>{two, two, one, two}));
  EXPECT_EQ(r2.final_state, t2().state("s3"));

  const auto r3 = run_word(t2(), t2().state("s3"), {});
  EXPECT_TRUE(r3.outputs.empty());
  EXPECT_EQ(r3.final_state, t2().state("s3"));
}

TEST(ParseWord, Conventions) {
  EXPECT_EQ(parse_word(t2(), "12").size(), 2u);
  EXPECT_EQ(parse_word(t2(), "1,2,2").size(), 3u);
  EXPECT_EQ(code_of([] { parse_word(t2(), "13"); }), ErrorCode::UnknownSymbol);

  AutomatonTables named;
  named.states = {"q"};
  named.inputs = {"up", "down"};
  named.delta["q"] = {{"up", "q"}, {"down", "q"}};
  named.lambda["q"] = {{"up", "down"}, {"down", "up"}};
  const auto a = ReversibleAutomaton::validate(named);
  EXPECT_EQ(parse_word(a, "up,down,up"),
            (std::vector<SymbolId>{SymbolId{0}, SymbolId{1}, SymbolId{0}}));
  EXPECT_EQ(parse_word(a, "down"), (std::vector<SymbolId>{SymbolId{1}}));
}

TEST(Reverse, Examples) {
  EXPECT_EQ(reverse(reverse(t1())), t1());
  EXPECT_EQ(to_permutation(reverse(t1())).one_line(), (std::vector<std::size_t>{4, 2, 1, 3}));
  const auto back = reverse(t2());
  for (std::size_t k = 0; k < t2().num_pairs(); ++k) {
    const Pair p = t2().pair_at(k);
    EXPECT_EQ(step(back, step(t2(), p)), p);
    EXPECT_EQ(step(t2(), step(back, p)), p);
  }
}

TEST(Properties, RandomReversibleAutomata) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto tables = random_reversible_tables(rng, dim(rng), dim(rng));
    const auto a = ReversibleAutomaton::validate(tables);
    const auto u = to_permutation(a);

    EXPECT_EQ(a.tables(), tables);
    EXPECT_EQ(from_permutation(u, a.num_states(), a.num_inputs()), a);

    // Bijectivity: the images cover S x I exactly once.
    std::vector<Pair> images;
    for (std::size_t k = 0; k < a.num_pairs(); ++k) images.push_back(step(a, a.pair_at(k)));
    std::sort(images.begin(), images.end());
    EXPECT_EQ(images, canonical_labels(a));

    EXPECT_TRUE(compose(u, to_permutation(reverse(a))).is_identity());

    // Feedback run endpoint equals the combined map iterated directly.
    const std::size_t start = trial % a.num_pairs();
    const std::uint64_t n = static_cast<std::uint64_t>(trial % 33);
    std::size_t idx = start;
    for (std::uint64_t s = 0; s < n; ++s) idx = u(idx);
    EXPECT_EQ(run_feedback(a, a.pair_at(start), n).steps.back(), a.pair_at(idx));

    // evolve_labels(N) equals N single-step evolutions.
    LabelVector psi = canonical_labels(a);
    std::shuffle(psi.begin(), psi.end(), rng);
    LabelVector stepped = psi;
    for (std::uint64_t s = 0; s < n; ++s) stepped = evolve_labels(a, stepped, 1);
    EXPECT_EQ(evolve_labels(a, psi, n), stepped);

    // Periodicity at the permutation order.
    const auto period = order(u);
    for (std::size_t k = 0; k < a.num_pairs(); ++k) {
      EXPECT_EQ(run_feedback(a, a.pair_at(k), period).steps.back(), a.pair_at(k));
    }
  }
}

TEST(RoundTrip, FixturesThroughPermutation) {
  for (const auto* a : {&t1(), &t2()}) {
    EXPECT_EQ(from_permutation(to_permutation(*a), a->num_states(), a->num_inputs()), *a);
  }
}

TEST(FileFormat, ParsesFixtureFiles) {
  std::ifstream in(std::string(REVCOMP_TEST_DATA_DIR) + "/table2.aut");
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(ReversibleAutomaton::validate(parse_automaton(buf.str())), t2());
  EXPECT_EQ(ReversibleAutomaton::validate(parse_automaton(format_automaton(t1()))), t1());
}

TEST(FileFormat, Errors) {
  EXPECT_EQ(code_of([] { parse_automaton("{\"states\": ["); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_automaton("[]"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_automaton(R"({"states": ["s"], "inputs": ["1"], "delta": {}})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              parse_automaton(
                  R"({"states": ["s"], "inputs": [1], "delta": {}, "lambda": {}})");
            }),
            ErrorCode::ParseError);
}

TEST(FileFormat, DotExport) {
  const std::string dot = automaton_to_dot(t1());
  EXPECT_NE(dot.find("\"s1\" -> \"s2\" [label=\"1/1\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"s2\" -> \"s1\" [label=\"2/1\"];"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 4);
}

}  // namespace
}  // namespace revcomp
