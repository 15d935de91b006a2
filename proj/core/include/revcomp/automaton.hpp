#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revcomp/permutation.hpp"

namespace revcomp {

enum class StateId : std::size_t {};
enum class SymbolId : std::size_t {};

constexpr std::size_t index(StateId s) noexcept { return static_cast<std::size_t>(s); }
constexpr std::size_t index(SymbolId i) noexcept { return static_cast<std::size_t>(i); }

// One entry of S x I.
struct Pair {
  StateId state;
  SymbolId symbol;
  auto operator<=>(const Pair&) const = default;
};

// Name-keyed, unvalidated transition and output tables, as read from a file.
struct AutomatonTables {
  std::vector<std::string> states;
  std::vector<std::string> inputs;
  std::map<std::string, std::map<std::string, std::string>> delta;
  std::map<std::string, std::map<std::string, std::string>> lambda;

  bool operator==(const AutomatonTables&) const = default;
};

// Mealy automaton with I = O whose combined update
// (s, i) -> (delta(s, i), lambda(s, i)) is a bijection on S x I.
// Only constructible through validation, so every instance is reversible.
class ReversibleAutomaton {
 public:
  // Throws IncompleteTable, UnknownState, UnknownSymbol, NotInjective.
  static ReversibleAutomaton validate(const AutomatonTables& tables);
  // Tables indexed by pair_index(). Same errors as validate().
  static ReversibleAutomaton from_tables(std::vector<std::string> states,
                                         std::vector<std::string> inputs,
                                         std::vector<StateId> next_state,
                                         std::vector<SymbolId> output);

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& inputs() const noexcept { return inputs_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_inputs() const noexcept { return inputs_.size(); }
  std::size_t num_pairs() const noexcept { return next_state_.size(); }

  // Throws UnknownState / UnknownSymbol.
  StateId state(std::string_view name) const;
  SymbolId symbol(std::string_view name) const;
  const std::string& name(StateId s) const { return states_.at(index(s)); }
  const std::string& name(SymbolId i) const { return inputs_.at(index(i)); }

  // Row-major: (s_p, i_q) has index p * |I| + q (0-based).
  std::size_t pair_index(Pair p) const noexcept {
    return index(p.state) * num_inputs() + index(p.symbol);
  }
  Pair pair_at(std::size_t idx) const noexcept {
    return {StateId{idx / num_inputs()}, SymbolId{idx % num_inputs()}};
  }

  StateId next_state(StateId s, SymbolId i) const;
  SymbolId output(StateId s, SymbolId i) const;

  AutomatonTables tables() const;

  bool operator==(const ReversibleAutomaton&) const = default;

 private:
  ReversibleAutomaton() = default;

  std::vector<std::string> states_;
  std::vector<std::string> inputs_;
  std::vector<StateId> next_state_;
  std::vector<SymbolId> output_;
};

struct Trajectory {
  std::vector<Pair> steps;
};

// Entry k is the (state, symbol) label sitting at index k.
using LabelVector = std::vector<Pair>;

struct WordRun {
  std::vector<SymbolId> outputs;
  StateId final_state;
};

Permutation to_permutation(const ReversibleAutomaton& a);

// States are named s1..sN and symbols 1..M. Throws DimensionMismatch.
ReversibleAutomaton from_permutation(const Permutation& p, std::size_t n_states,
                                     std::size_t n_inputs);

// Throws UnknownState / UnknownSymbol for out-of-range ids.
Pair step(const ReversibleAutomaton& a, Pair at);

// Feeds each (state, output) back in as the next (state, input).
Trajectory run_feedback(const ReversibleAutomaton& a, Pair start, std::uint64_t steps);

// Row-major listing (s1,1), (s1,2), (s2,1), ...
LabelVector canonical_labels(const ReversibleAutomaton& a);

// result[k] = psi[U^N(k)]. Throws DimensionMismatch.
LabelVector evolve_labels(const ReversibleAutomaton& a, const LabelVector& psi,
                          std::uint64_t steps);

WordRun run_word(const ReversibleAutomaton& a, StateId start, std::span<const SymbolId> word);

// The inverse evolution: to_permutation(reverse(a)) == inverse(to_permutation(a)).
ReversibleAutomaton reverse(const ReversibleAutomaton& a);

// Words are written as comma-separated symbol names, or, when every symbol
// name is a single character, as the names concatenated ("2222").
// Throws UnknownSymbol.
std::vector<SymbolId> parse_word(const ReversibleAutomaton& a, std::string_view text);

std::string format_pair(const ReversibleAutomaton& a, Pair p);

// Automaton file format:
//   {"states": [...], "inputs": [...],
//    "delta":  {state: {symbol: state}},
//    "lambda": {state: {symbol: symbol}}}
// Throws ParseError on malformed text; structure is checked by validate().
AutomatonTables parse_automaton(std::string_view json_text);
std::string format_automaton(const ReversibleAutomaton& a);
// One node per state, one edge per (state, input) labelled "input/output".
std::string automaton_to_dot(const ReversibleAutomaton& a);

}  // namespace revcomp
