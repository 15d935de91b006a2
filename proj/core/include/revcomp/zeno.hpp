#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace revcomp {

// Geometric squeeze of intrinsic cycle time against proper time: cycle t
// takes k^t units of proper time, 0 < k < 1.
class ZenoSchedule {
 public:
  // Throws InvalidSchedule unless 0 < k < 1.
  explicit ZenoSchedule(double k);
  double squeeze() const noexcept { return k_; }

 private:
  double k_;
};

// tau_t = k (k^t - 1) / (k - 1); tau_0 = 0.
double proper_time(const ZenoSchedule& sched, std::uint64_t t);
// tau_inf = k / (1 - k).
double limit_time(const ZenoSchedule& sched);

// Either a finite cycle count or "every cycle fits".
class CycleCount {
 public:
  static CycleCount unbounded() noexcept { return CycleCount(true, 0); }
  static CycleCount finite(std::uint64_t n) noexcept { return CycleCount(false, n); }
  bool is_unbounded() const noexcept { return unbounded_; }
  std::uint64_t value() const noexcept { return value_; }
  bool operator==(const CycleCount&) const = default;

 private:
  CycleCount(bool unbounded, std::uint64_t value) : unbounded_(unbounded), value_(value) {}
  bool unbounded_;
  std::uint64_t value_;
};

// Largest t with tau_t <= budget, or unbounded once budget >= tau_inf.
CycleCount cycles_within(const ZenoSchedule& sched, double budget);

enum class Verdict { Halts, Loops };
std::string_view to_string(Verdict v) noexcept;

// Finite-state machine: a total step map on states 0..n-1; halting states
// are fixed points. `start[j]` is the initial state for input index j.
class TableProgram {
 public:
  // Throws InvalidProgram.
  static TableProgram create(std::vector<std::size_t> step, std::vector<bool> halting,
                             std::vector<std::size_t> start);

  std::size_t num_states() const noexcept { return step_.size(); }
  std::size_t next(std::size_t state) const { return step_.at(state); }
  bool is_halting(std::size_t state) const { return halting_.at(state); }
  const std::vector<std::size_t>& starts() const noexcept { return start_; }
  const std::vector<std::size_t>& steps() const noexcept { return step_; }
  const std::vector<bool>& halting() const noexcept { return halting_; }

  // Input encodings that are decimal integers select start[value % m];
  // anything else is hashed (FNV-1a) onto the start table.
  std::size_t start_state(std::string_view input) const;

  bool operator==(const TableProgram&) const = default;

 private:
  TableProgram() = default;
  std::vector<std::size_t> step_;
  std::vector<bool> halting_;
  std::vector<std::size_t> start_;
};

// The adversary: on input x it asks the named decider about (x, x), then
// loops forever on Halts and halts at once on Loops.
struct DiagonalProgram {
  std::string decider;
  bool operator==(const DiagonalProgram&) const = default;
};

using ToyProgram = std::variant<TableProgram, DiagonalProgram>;

// Canonical text:
//   table:step=1,2,2;halt=2;start=0
//   diagonal:decider=exact
std::string encode_program(const ToyProgram& program);
// Throws InvalidEncoding.
ToyProgram decode_program(std::string_view encoding);

struct Halted {
  std::uint64_t cycles;
  double proper_time;
  bool operator==(const Halted&) const = default;
};
struct NonHalting {
  std::uint64_t cycle_length;
  std::uint64_t cycle_start;
  bool operator==(const NonHalting&) const = default;
};
struct Exhausted {
  std::uint64_t cycles_executed;
  bool operator==(const Exhausted&) const = default;
};
using ZenoOutcome = std::variant<Halted, NonHalting, Exhausted>;

std::string format_outcome(const ZenoOutcome& outcome);

class ProgramSpace;

// Total halting decider over (program encoding, input encoding).
struct Decider {
  std::string name;
  std::function<Verdict(const ProgramSpace&, std::string_view program, std::string_view input)>
      decide;
};

// Registry that gives Diagonal programs' decider references meaning.
class ProgramSpace {
 public:
  // Replaces any decider registered under the same name.
  void add(Decider decider);
  bool contains(std::string_view name) const;
  // Throws UnknownDecider.
  const Decider& decider(std::string_view name) const;

  // Asks a decider for a verdict. A decider that, while answering a query,
  // is asked the very same query again (the diagonal self-reference) gets
  // kSelfReferenceVerdict for the inner query so that it stays total.
  Verdict consult(std::string_view decider, std::string_view program,
                  std::string_view input) const;
  static constexpr Verdict kSelfReferenceVerdict = Verdict::Halts;

  // The finite machine and start state that `program` runs on `input`.
  // For a Diagonal program this consults its decider once.
  struct Resolved {
    TableProgram table;
    std::size_t start;
  };
  Resolved resolve(const ToyProgram& program, std::string_view input) const;

 private:
  std::map<std::string, Decider, std::less<>> deciders_;
};

// Runs at most cycles_within(sched, budget) cycles. With budget >= tau_inf the
// run is limit-complete: configuration repetition settles non-halting, so
// the result is never Exhausted. Throws InvalidEncoding / UnknownDecider.
ZenoOutcome run_zeno(const ProgramSpace& space, const ToyProgram& program,
                     std::string_view input, const ZenoSchedule& sched, double budget);

Decider constant_decider(Verdict verdict);
// Simulates up to `bound` cycles; Halts iff a halting state was reached.
Decider step_bounded_decider(std::uint64_t bound);
// Cycle detection on the resolved machine; exact on Table programs and
// extended to Diagonal programs by meta-evaluation.
Decider exact_decider();
// "const-halts", "const-loops", "bounded:N" or "exact". Throws UnknownDecider.
Decider decider_by_name(std::string_view name);

struct DiagonalReport {
  ToyProgram adversary;
  std::string adversary_encoding;
  Verdict claimed;      // decider's verdict on (#A, #A)
  ZenoOutcome actual;   // limit-complete run of A on #A
  bool decider_wrong;
};

// Registers `decider` in `space`, builds A, and certifies the decider's
// verdict on A's own encoding against A's actual behaviour.
DiagonalReport diagonal_adversary(ProgramSpace& space, const Decider& decider);

std::string format_report(const DiagonalReport& report);

}  // namespace revcomp
