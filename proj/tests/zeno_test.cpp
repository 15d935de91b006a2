#include "revcomp/zeno.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "revcomp/error.hpp"

namespace revcomp {
namespace {

// sum_{j=1..t} k^j, accumulated term by term.
double tau_by_summation(double k, std::uint64_t t) {
  double sum = 0.0, term = 1.0;
  for (std::uint64_t j = 1; j <= t; ++j) {
    term *= k;
    sum += term;
  }
  return sum;
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

TableProgram chain_to_halt(std::size_t length) {
  std::vector<std::size_t> step;
  for (std::size_t s = 0; s < length; ++s) step.push_back(s + 1);
  step.push_back(length);
  std::vector<bool> halting(length + 1, false);
  halting[length] = true;
  return TableProgram::create(step, halting, {0});
}

TEST(Schedule, ProperTimeMatchesSummation) {
  for (int tenth = 1; tenth <= 9; ++tenth) {
    const double k = tenth / 10.0;
    const ZenoSchedule sched(k);
    EXPECT_EQ(proper_time(sched, 0), 0.0);
    for (std::uint64_t t = 1; t <= 64; ++t) {
      EXPECT_NEAR(proper_time(sched, t), tau_by_summation(k, t), 1e-12) << "k=" << k << " t=" << t;
      EXPECT_NEAR(proper_time(sched, t) - proper_time(sched, t - 1), std::pow(k, double(t)), 1e-12);
    }
  }
  EXPECT_NEAR(proper_time(ZenoSchedule(1e-4), 3), tau_by_summation(1e-4, 3), 1e-16);
}

TEST(Schedule, FirstValuesAtOneHalf) {
  const ZenoSchedule half(0.5);
  EXPECT_DOUBLE_EQ(proper_time(half, 1), 0.5);
  EXPECT_DOUBLE_EQ(proper_time(half, 2), 0.75);
  EXPECT_DOUBLE_EQ(proper_time(half, 3), 0.875);
}

TEST(Schedule, StrictlyIncreasingBelowTheLimit) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kd(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const ZenoSchedule sched(kd(rng));
    const double limit = limit_time(sched);
    // Only while k^t is resolvable against tau_t in double precision.
    for (std::uint64_t t = 1; std::pow(sched.squeeze(), double(t)) > 1e-14 * limit; ++t) {
      EXPECT_LT(proper_time(sched, t - 1), proper_time(sched, t));
      EXPECT_LT(proper_time(sched, t), limit);
    }
  }
}

TEST(Schedule, Limits) {
  EXPECT_DOUBLE_EQ(limit_time(ZenoSchedule(0.5)), 1.0);
  EXPECT_NEAR(limit_time(ZenoSchedule(2.0 / 3.0)), 2.0, 1e-12);
  EXPECT_NEAR(limit_time(ZenoSchedule(1e-4)), 1e-4 / (1 - 1e-4), 1e-18);
  for (int tenth = 1; tenth <= 9; ++tenth) {
    const ZenoSchedule sched(tenth / 10.0);
    EXPECT_NEAR(proper_time(sched, 2000), limit_time(sched), 1e-9);
  }
}

TEST(Schedule, RejectsBadSqueeze) {
  for (double k : {0.0, 1.0, -0.5, 1.5, std::nan("")}) {
    EXPECT_EQ(code_of([&] { ZenoSchedule s(k); }), ErrorCode::InvalidSchedule) << k;
  }
}

TEST(CyclesWithin, Examples) {
  const ZenoSchedule half(0.5);
  EXPECT_EQ(cycles_within(half, 0.9), CycleCount::finite(3));
  EXPECT_EQ(cycles_within(half, 1.0), CycleCount::unbounded());
  EXPECT_EQ(cycles_within(half, 5.0), CycleCount::unbounded());
  EXPECT_EQ(cycles_within(half, 0.0), CycleCount::finite(0));
  EXPECT_EQ(cycles_within(half, 0.75), CycleCount::finite(2));
  EXPECT_EQ(code_of([&] { cycles_within(half, -0.1); }), ErrorCode::InvalidSchedule);
}

TEST(CyclesWithin, AgreesWithLinearScan) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> kd(0.05, 0.95), frac(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const ZenoSchedule sched(kd(rng));
    const double budget = frac(rng) * limit_time(sched) * 0.999;
    std::uint64_t t = 0;
    while (tau_by_summation(sched.squeeze(), t + 1) <= budget) ++t;
    const auto got = cycles_within(sched, budget);
    ASSERT_FALSE(got.is_unbounded());
    // Summation and the closed form may straddle the budget by one ulp.
    EXPECT_LE(got.value() > t ? got.value() - t : t - got.value(), 1u);
    EXPECT_LE(proper_time(sched, got.value()), budget);
    EXPECT_GT(proper_time(sched, got.value() + 1), budget);
  }
}

TEST(TableProgram, Validation) {
  EXPECT_EQ(code_of([] { TableProgram::create({}, {}, {0}); }), ErrorCode::InvalidProgram);
  EXPECT_EQ(code_of([] { TableProgram::create({1}, {false}, {0}); }), ErrorCode::InvalidProgram);
  EXPECT_EQ(code_of([] { TableProgram::create({1, 0}, {true, false}, {0}); }), ErrorCode::InvalidProgram);
  EXPECT_EQ(code_of([] { TableProgram::create({0}, {false, false}, {0}); }), ErrorCode::InvalidProgram);
  EXPECT_EQ(code_of([] { TableProgram::create({0}, {true}, {}); }), ErrorCode::InvalidProgram);
  EXPECT_EQ(code_of([] { TableProgram::create({0}, {true}, {1}); }), ErrorCode::InvalidProgram);
}

TEST(TableProgram, InputSelectsStart) {
  const auto p = TableProgram::create({0, 1, 2}, {true, true, true}, {2, 0, 1});
  EXPECT_EQ(p.start_state("0"), 2u);
  EXPECT_EQ(p.start_state("1"), 0u);
  EXPECT_EQ(p.start_state("4"), 0u);
  // Non-numeric inputs are hashed, deterministically.
  EXPECT_EQ(p.start_state("abc"), p.start_state("abc"));
  EXPECT_EQ(p.start_state(""), p.start_state(""));
}

TEST(RunZeno, HaltsAtStepFive) {
  ProgramSpace space;
  const auto out = run_zeno(space, chain_to_halt(5), "0", ZenoSchedule(0.5), 1.0);
  ASSERT_TRUE(std::holds_alternative<Halted>(out));
  EXPECT_EQ(std::get<Halted>(out).cycles, 5u);
  EXPECT_NEAR(std::get<Halted>(out).proper_time, 0.96875, 1e-12);
  EXPECT_EQ(format_outcome(out), "Halted t=5 tau=0.96875");
}

TEST(RunZeno, TwoCycleIsNonHalting) {
  ProgramSpace space;
  const auto loop = TableProgram::create({1, 0}, {false, false}, {0});
  EXPECT_EQ(run_zeno(space, loop, "0", ZenoSchedule(0.5), 1.0), ZenoOutcome(NonHalting{2, 0}));
  const auto tail = TableProgram::create({1, 2, 3, 1}, {false, false, false, false}, {0});
  EXPECT_EQ(run_zeno(space, tail, "0", ZenoSchedule(0.25), 1.0), ZenoOutcome(NonHalting{3, 1}));
}

TEST(RunZeno, ShortBudgetIsExhausted) {
  ProgramSpace space;
  const auto loop = TableProgram::create({1, 0}, {false, false}, {0});
  EXPECT_EQ(run_zeno(space, loop, "0", ZenoSchedule(0.5), 0.4), ZenoOutcome(Exhausted{0}));
  EXPECT_EQ(run_zeno(space, chain_to_halt(5), "0", ZenoSchedule(0.5), 0.9),
            ZenoOutcome(Exhausted{3}));
  // Halting inside the budget wins over exhaustion.
  EXPECT_TRUE(std::holds_alternative<Halted>(
      run_zeno(space, chain_to_halt(3), "0", ZenoSchedule(0.5), 0.875)));
}

TEST(RunZeno, LimitCompleteRunsAgreeWithNaiveSimulation) {
  std::mt19937_64 rng(21);
  ProgramSpace space;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 12;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> step(n);
    std::vector<bool> halting(n);
    for (std::size_t s = 0; s < n; ++s) {
      halting[s] = rng() % 4 == 0;
      step[s] = halting[s] ? s : pick(rng);
    }
    const auto p = TableProgram::create(step, halting, {pick(rng)});
    const auto out = run_zeno(space, p, "0", ZenoSchedule(0.5), 1.0);
    // Oracle: n steps suffice to hit a halting state if one is reachable.
    std::size_t s = p.starts()[0];
    std::uint64_t t = 0;
    while (!halting[s] && t <= n) {
      s = step[s];
      ++t;
    }
    if (halting[s]) {
      ASSERT_TRUE(std::holds_alternative<Halted>(out));
      EXPECT_EQ(std::get<Halted>(out).cycles, t);
    } else {
      EXPECT_TRUE(std::holds_alternative<NonHalting>(out));
    }
  }
}

TEST(Encoding, RoundTrip) {
  const auto p = TableProgram::create({1, 2, 2}, {false, false, true}, {0});
  EXPECT_EQ(encode_program(p), "table:step=1,2,2;halt=2;start=0");
  EXPECT_EQ(decode_program("table:step=1,2,2;halt=2;start=0"), ToyProgram(p));
  const ToyProgram d = DiagonalProgram{"bounded:7"};
  EXPECT_EQ(encode_program(d), "diagonal:decider=bounded:7");
  EXPECT_EQ(decode_program(encode_program(d)), d);
  const auto loop = TableProgram::create({1, 0}, {false, false}, {1, 0});
  EXPECT_EQ(decode_program(encode_program(loop)), ToyProgram(loop));
}

TEST(Encoding, Errors) {
  for (std::string_view bad :
       {"", "tape:step=0", "table:step=0;halt=0", "table:step=0;halt=0;start=0;x=1",
        "table:step=0;halt=0;halt=0", "table:step=a;halt=;start=0", "table:step=1;halt=;start=0",
        "table:step=0;halt=3;start=0", "table:step=1,0;halt=0;start=0", "diagonal:", "diagonal:decider=",
        "diagonal:decider=a;b", "diagonal:judge=exact"}) {
    EXPECT_EQ(code_of([&] { decode_program(bad); }), ErrorCode::InvalidEncoding) << bad;
  }
}

TEST(Deciders, ByName) {
  EXPECT_EQ(decider_by_name("const-halts").name, "const-halts");
  EXPECT_EQ(decider_by_name("bounded:12").name, "bounded:12");
  EXPECT_EQ(decider_by_name("exact").name, "exact");
  for (std::string_view bad : {"", "oracle", "bounded:", "bounded:x", "bounded:-1"}) {
    EXPECT_EQ(code_of([&] { decider_by_name(bad); }), ErrorCode::UnknownDecider) << bad;
  }
  ProgramSpace space;
  EXPECT_EQ(code_of([&] { space.consult("exact", "table:step=0;halt=0;start=0", "0"); }),
            ErrorCode::UnknownDecider);
  EXPECT_EQ(code_of([&] {
              run_zeno(space, DiagonalProgram{"missing"}, "x", ZenoSchedule(0.5), 1.0);
            }),
            ErrorCode::UnknownDecider);
}

TEST(Deciders, ExactIsCorrectOnTablePrograms) {
  ProgramSpace space;
  space.add(exact_decider());
  space.add(step_bounded_decider(3));
  const auto halts = encode_program(chain_to_halt(5));
  const auto loops = encode_program(TableProgram::create({1, 0}, {false, false}, {0}));
  EXPECT_EQ(space.consult("exact", halts, "0"), Verdict::Halts);
  EXPECT_EQ(space.consult("exact", loops, "0"), Verdict::Loops);
  // The bounded decider gives up before step 5.
  EXPECT_EQ(space.consult("bounded:3", halts, "0"), Verdict::Loops);
}

TEST(Diagonal, EveryDeciderIsRefuted) {
  std::vector<Decider> family{constant_decider(Verdict::Halts), constant_decider(Verdict::Loops),
                              exact_decider()};
  for (std::uint64_t b : {1, 2, 3, 10, 100, 1000}) family.push_back(step_bounded_decider(b));
  for (const auto& d : family) {
    ProgramSpace space;
    const auto report = diagonal_adversary(space, d);
    EXPECT_TRUE(report.decider_wrong) << d.name;
    EXPECT_EQ(report.adversary_encoding, "diagonal:decider=" + d.name);
    EXPECT_FALSE(std::holds_alternative<Exhausted>(report.actual));
    if (report.claimed == Verdict::Halts) {
      EXPECT_TRUE(std::holds_alternative<NonHalting>(report.actual)) << d.name;
    } else {
      EXPECT_TRUE(std::holds_alternative<Halted>(report.actual)) << d.name;
    }
  }
}

TEST(Diagonal, ReportText) {
  ProgramSpace space;
  const auto report = diagonal_adversary(space, constant_decider(Verdict::Halts));
  EXPECT_EQ(format_report(report),
            "adversary: diagonal:decider=const-halts\n"
            "verdict on (#A,#A): Halts\n"
            "actual: NonHalting cycle_length=2 cycle_start=0\n"
            "decider wrong: yes\n");
}

}  // namespace
}  // namespace revcomp
