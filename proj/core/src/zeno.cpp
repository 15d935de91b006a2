#include "revcomp/zeno.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <tuple>

#include "revcomp/error.hpp"
#include "revcomp/text.hpp"

namespace revcomp {

ZenoSchedule::ZenoSchedule(double k) : k_(k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw Error(ErrorCode::InvalidSchedule,
                "squeeze factor must lie strictly between 0 and 1, got " + text::shortest(k));
  }
}

double proper_time(const ZenoSchedule& sched, std::uint64_t t) {
  if (t == 0) return 0.0;
  const double k = sched.squeeze();
  return k * (std::pow(k, static_cast<double>(t)) - 1.0) / (k - 1.0);
}

double limit_time(const ZenoSchedule& sched) {
  const double k = sched.squeeze();
  return k / (1.0 - k);
}

CycleCount cycles_within(const ZenoSchedule& sched, double budget) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorCode::InvalidSchedule, "proper-time budget must be nonnegative");
  }
  if (budget >= limit_time(sched)) return CycleCount::unbounded();
  const double k = sched.squeeze();
  // tau_t <= budget  <=>  k^t >= 1 - budget (1 - k) / k
  const double r = 1.0 - budget * (1.0 - k) / k;
  std::uint64_t t = r >= 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(std::log(r) / std::log(k)));
  while (proper_time(sched, t + 1) <= budget) ++t;
  while (t > 0 && proper_time(sched, t) > budget) --t;
  return CycleCount::finite(t);
}

std::string_view to_string(Verdict v) noexcept { return v == Verdict::Halts ? "Halts" : "Loops"; }

TableProgram TableProgram::create(std::vector<std::size_t> step, std::vector<bool> halting,
                                  std::vector<std::size_t> start) {
  const std::size_t n = step.size();
  if (n == 0) throw Error(ErrorCode::InvalidProgram, "table program needs at least one state");
  if (halting.size() != n) {
    throw Error(ErrorCode::InvalidProgram, "halting flags must cover every state");
  }
  if (start.empty()) throw Error(ErrorCode::InvalidProgram, "table program needs a start state");
  for (std::size_t s = 0; s < n; ++s) {
    if (step[s] >= n) {
      throw Error(ErrorCode::InvalidProgram, "step(" + std::to_string(s) + ") = " +
                                                 std::to_string(step[s]) + " is out of range");
    }
    if (halting[s] && step[s] != s) {
      throw Error(ErrorCode::InvalidProgram,
                  "halting state " + std::to_string(s) + " must be a fixed point of step");
    }
  }
  for (std::size_t s : start) {
    if (s >= n) throw Error(ErrorCode::InvalidProgram, "start state " + std::to_string(s) + " is out of range");
  }
  TableProgram p;
  p.step_ = std::move(step);
  p.halting_ = std::move(halting);
  p.start_ = std::move(start);
  return p;
}

std::size_t TableProgram::start_state(std::string_view input) const {
  const std::size_t m = start_.size();
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(input.data(), input.data() + input.size(), value);
  if (input.empty() || ec != std::errc{} || ptr != input.data() + input.size()) {
    value = 14695981039346656037ull;
    for (unsigned char c : input) {
      value ^= c;
      value *= 1099511628211ull;
    }
  }
  return start_[static_cast<std::size_t>(value % m)];
}

namespace {

constexpr std::string_view kTablePrefix = "table:";
constexpr std::string_view kDiagonalPrefix = "diagonal:";

std::string join_indices(const std::vector<std::size_t>& values) {
  std::vector<std::string> parts;
  for (auto v : values) parts.push_back(std::to_string(v));
  return text::join(parts, ",");
}

std::vector<std::size_t> parse_indices(std::string_view field, std::string_view value) {
  std::vector<std::size_t> out;
  if (value.empty()) return out;
  for (const auto& tok : text::split(value, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::InvalidEncoding,
                  "bad index '" + tok + "' in field '" + std::string(field) + "'");
    }
    out.push_back(v);
  }
  return out;
}

// Reentrancy bookkeeping for ProgramSpace::consult, per thread.
using Query = std::tuple<const ProgramSpace*, std::string, std::string, std::string>;
thread_local std::set<Query> active_queries;

struct QueryGuard {
  std::set<Query>::iterator it;
  ~QueryGuard() { active_queries.erase(it); }
};

// Limit-complete simulation, or bounded by `cap` cycles.
ZenoOutcome simulate(const TableProgram& table, std::size_t start, const ZenoSchedule& sched,
                     CycleCount cap) {
  std::vector<std::int64_t> first_seen(table.num_states(), -1);
  std::size_t state = start;
  for (std::uint64_t t = 0;; ++t) {
    if (table.is_halting(state)) return Halted{t, proper_time(sched, t)};
    if (first_seen[state] >= 0) {
      const auto begin = static_cast<std::uint64_t>(first_seen[state]);
      return NonHalting{t - begin, begin};
    }
    first_seen[state] = static_cast<std::int64_t>(t);
    if (!cap.is_unbounded() && t >= cap.value()) return Exhausted{t};
    state = table.next(state);
  }
}

}  // namespace

std::string encode_program(const ToyProgram& program) {
  if (const auto* d = std::get_if<DiagonalProgram>(&program)) {
    return std::string(kDiagonalPrefix) + "decider=" + d->decider;
  }
  const auto& t = std::get<TableProgram>(program);
  std::vector<std::size_t> halt;
  for (std::size_t s = 0; s < t.num_states(); ++s)
    if (t.is_halting(s)) halt.push_back(s);
  return std::string(kTablePrefix) + "step=" + join_indices(t.steps()) + ";halt=" +
         join_indices(halt) + ";start=" + join_indices(t.starts());
}

ToyProgram decode_program(std::string_view encoding) {
  if (encoding.starts_with(kDiagonalPrefix)) {
    const auto rest = encoding.substr(kDiagonalPrefix.size());
    if (!rest.starts_with("decider=") || rest.size() == 8 ||
        rest.find(';') != std::string_view::npos) {
      throw Error(ErrorCode::InvalidEncoding, "diagonal encoding must be 'diagonal:decider=<name>'");
    }
    return DiagonalProgram{std::string(rest.substr(8))};
  }
  if (!encoding.starts_with(kTablePrefix)) {
    throw Error(ErrorCode::InvalidEncoding,
                "program encoding must start with 'table:' or 'diagonal:'");
  }
  std::map<std::string, std::string> fields;
  for (const auto& part : text::split(encoding.substr(kTablePrefix.size()), ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidEncoding, "field '" + part + "' lacks '='");
    if (!fields.emplace(part.substr(0, eq), part.substr(eq + 1)).second) {
      throw Error(ErrorCode::InvalidEncoding, "duplicate field '" + part.substr(0, eq) + "'");
    }
  }
  if (fields.size() != 3 || !fields.contains("step") || !fields.contains("halt") ||
      !fields.contains("start")) {
    throw Error(ErrorCode::InvalidEncoding, "table encoding needs exactly step=, halt= and start=");
  }
  auto step = parse_indices("step", fields["step"]);
  std::vector<bool> halting(step.size(), false);
  for (std::size_t h : parse_indices("halt", fields["halt"])) {
    if (h >= step.size()) throw Error(ErrorCode::InvalidEncoding, "halting state out of range");
    halting[h] = true;
  }
  try {
    return TableProgram::create(std::move(step), std::move(halting),
                                parse_indices("start", fields["start"]));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidEncoding, e.what());
  }
}

std::string format_outcome(const ZenoOutcome& outcome) {
  if (const auto* h = std::get_if<Halted>(&outcome)) {
    return "Halted t=" + std::to_string(h->cycles) + " tau=" + text::shortest(h->proper_time);
  }
  if (const auto* l = std::get_if<NonHalting>(&outcome)) {
    return "NonHalting cycle_length=" + std::to_string(l->cycle_length) +
           " cycle_start=" + std::to_string(l->cycle_start);
  }
  return "Exhausted cycles_executed=" + std::to_string(std::get<Exhausted>(outcome).cycles_executed);
}

void ProgramSpace::add(Decider decider) {
  auto name = decider.name;
  deciders_.insert_or_assign(std::move(name), std::move(decider));
}

bool ProgramSpace::contains(std::string_view name) const { return deciders_.find(name) != deciders_.end(); }

const Decider& ProgramSpace::decider(std::string_view name) const {
  const auto it = deciders_.find(name);
  if (it == deciders_.end()) {
    throw Error(ErrorCode::UnknownDecider, "no decider named '" + std::string(name) + "'");
  }
  return it->second;
}

Verdict ProgramSpace::consult(std::string_view name, std::string_view program,
                              std::string_view input) const {
  const Decider& d = decider(name);
  auto [it, fresh] = active_queries.emplace(this, std::string(name), std::string(program),
                                            std::string(input));
  if (!fresh) return kSelfReferenceVerdict;
  QueryGuard guard{it};
  return d.decide(*this, program, input);
}

ProgramSpace::Resolved ProgramSpace::resolve(const ToyProgram& program,
                                             std::string_view input) const {
  if (const auto* t = std::get_if<TableProgram>(&program)) return {*t, t->start_state(input)};
  const auto& diag = std::get<DiagonalProgram>(program);
  // A copies its input x and asks HALT about x run on x.
  if (consult(diag.decider, input, input) == Verdict::Halts) {
    return {TableProgram::create({1, 0}, {false, false}, {0}), 0};
  }
  return {TableProgram::create({0}, {true}, {0}), 0};
}

ZenoOutcome run_zeno(const ProgramSpace& space, const ToyProgram& program,
                     std::string_view input, const ZenoSchedule& sched, double budget) {
  const CycleCount cap = cycles_within(sched, budget);
  const auto resolved = space.resolve(program, input);
  return simulate(resolved.table, resolved.start, sched, cap);
}

Decider constant_decider(Verdict verdict) {
  return {verdict == Verdict::Halts ? "const-halts" : "const-loops",
          [verdict](const ProgramSpace&, std::string_view, std::string_view) { return verdict; }};
}

Decider step_bounded_decider(std::uint64_t bound) {
  return {"bounded:" + std::to_string(bound),
          [bound](const ProgramSpace& space, std::string_view program, std::string_view input) {
            const auto r = space.resolve(decode_program(program), input);
            const auto outcome = simulate(r.table, r.start, ZenoSchedule(0.5), CycleCount::finite(bound));
            return std::holds_alternative<Halted>(outcome) ? Verdict::Halts : Verdict::Loops;
          }};
}

Decider exact_decider() {
  return {"exact", [](const ProgramSpace& space, std::string_view program, std::string_view input) {
            const auto r = space.resolve(decode_program(program), input);
            const auto outcome = simulate(r.table, r.start, ZenoSchedule(0.5), CycleCount::unbounded());
            return std::holds_alternative<Halted>(outcome) ? Verdict::Halts : Verdict::Loops;
          }};
}

Decider decider_by_name(std::string_view name) {
  if (name == "const-halts") return constant_decider(Verdict::Halts);
  if (name == "const-loops") return constant_decider(Verdict::Loops);
  if (name == "exact") return exact_decider();
  if (name.starts_with("bounded:")) {
    const auto digits = name.substr(8);
    std::uint64_t bound = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bound);
    if (!digits.empty() && ec == std::errc{} && ptr == digits.data() + digits.size()) {
      return step_bounded_decider(bound);
    }
  }
  throw Error(ErrorCode::UnknownDecider, "unknown decider '" + std::string(name) +
                                             "' (expected const-halts, const-loops, bounded:N, exact)");
}

DiagonalReport diagonal_adversary(ProgramSpace& space, const Decider& decider) {
  space.add(decider);
  ToyProgram adversary = DiagonalProgram{decider.name};
  std::string code = encode_program(adversary);
  const Verdict claimed = space.consult(decider.name, code, code);
  const ZenoSchedule sched(0.5);
  ZenoOutcome actual = run_zeno(space, adversary, code, sched, limit_time(sched));
  const bool halted = std::holds_alternative<Halted>(actual);
  const bool wrong = (claimed == Verdict::Halts) != halted;
  return {std::move(adversary), std::move(code), claimed, std::move(actual), wrong};
}

std::string format_report(const DiagonalReport& report) {
  return "adversary: " + report.adversary_encoding + "\n" +
         "verdict on (#A,#A): " + std::string(to_string(report.claimed)) + "\n" +
         "actual: " + format_outcome(report.actual) + "\n" +
         "decider wrong: " + (report.decider_wrong ? "yes" : "no") + "\n";
}

}  // namespace revcomp
