#include "revcomp/automaton.hpp"

#include <algorithm>
#include <set>

#include "revcomp/error.hpp"
#include "revcomp/text.hpp"

namespace revcomp {

namespace {

std::size_t find_name(const std::vector<std::string>& names, std::string_view name) {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? names.size() : static_cast<std::size_t>(it - names.begin());
}

void check_names(const std::vector<std::string>& names, std::string_view what) {
  if (names.empty()) {
    throw Error(ErrorCode::IncompleteTable, "automaton needs at least one " + std::string(what));
  }
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(ErrorCode::IncompleteTable, "empty " + std::string(what) + " name");
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::IncompleteTable, "duplicate " + std::string(what) + " name '" + n + "'");
    }
  }
}

}  // namespace

ReversibleAutomaton ReversibleAutomaton::from_tables(std::vector<std::string> states,
                                                     std::vector<std::string> inputs,
                                                     std::vector<StateId> next_state,
                                                     std::vector<SymbolId> output) {
  check_names(states, "state");
  check_names(inputs, "input symbol");
  const std::size_t n = states.size() * inputs.size();
  if (next_state.size() != n || output.size() != n) {
    throw Error(ErrorCode::IncompleteTable, "transition tables must have |S|*|I| = " +
                                                std::to_string(n) + " entries");
  }
  ReversibleAutomaton a;
  a.states_ = std::move(states);
  a.inputs_ = std::move(inputs);
  a.next_state_ = std::move(next_state);
  a.output_ = std::move(output);

  std::vector<std::size_t> preimage(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (index(a.next_state_[k]) >= a.num_states()) {
      throw Error(ErrorCode::UnknownState, "transition target out of range");
    }
    if (index(a.output_[k]) >= a.num_inputs()) {
      throw Error(ErrorCode::UnknownSymbol, "output symbol out of range");
    }
    const std::size_t image = a.pair_index({a.next_state_[k], a.output_[k]});
    if (preimage[image] != n) {
      throw Error(ErrorCode::NotInjective,
                  "combined map is not injective: " + format_pair(a, a.pair_at(preimage[image])) +
                      " and " + format_pair(a, a.pair_at(k)) + " both map to " +
                      format_pair(a, a.pair_at(image)));
    }
    preimage[image] = k;
  }
  return a;
}

ReversibleAutomaton ReversibleAutomaton::validate(const AutomatonTables& tables) {
  check_names(tables.states, "state");
  check_names(tables.inputs, "input symbol");
  const std::size_t n = tables.states.size() * tables.inputs.size();
  std::vector<StateId> next(n);
  std::vector<SymbolId> out(n);

  auto lookup = [&](const auto& table, std::string_view table_name, const std::string& s,
                    const std::string& i) -> const std::string& {
    const auto row = table.find(s);
    if (row == table.end()) {
      throw Error(ErrorCode::IncompleteTable,
                  std::string(table_name) + " has no row for state '" + s + "'");
    }
    const auto cell = row->second.find(i);
    if (cell == row->second.end()) {
      throw Error(ErrorCode::IncompleteTable, std::string(table_name) + " is undefined at ('" +
                                                  s + "', '" + i + "')");
    }
    return cell->second;
  };

  for (std::size_t p = 0; p < tables.states.size(); ++p) {
    for (std::size_t q = 0; q < tables.inputs.size(); ++q) {
      const auto& s = tables.states[p];
      const auto& i = tables.inputs[q];
      const auto& target = lookup(tables.delta, "delta", s, i);
      const auto& emitted = lookup(tables.lambda, "lambda", s, i);
      const std::size_t t = find_name(tables.states, target);
      if (t == tables.states.size()) {
        throw Error(ErrorCode::UnknownState, "delta('" + s + "', '" + i + "') = '" + target +
                                                 "' is not a declared state");
      }
      const std::size_t o = find_name(tables.inputs, emitted);
      if (o == tables.inputs.size()) {
        throw Error(ErrorCode::UnknownSymbol, "lambda('" + s + "', '" + i + "') = '" + emitted +
                                                  "' is not a declared symbol");
      }
      next[p * tables.inputs.size() + q] = StateId{t};
      out[p * tables.inputs.size() + q] = SymbolId{o};
    }
  }
  // Rows for undeclared states would silently be ignored otherwise.
  for (const auto* table : {&tables.delta, &tables.lambda}) {
    for (const auto& [s, row] : *table) {
      if (find_name(tables.states, s) == tables.states.size()) {
        throw Error(ErrorCode::UnknownState, "table row for undeclared state '" + s + "'");
      }
      for (const auto& [i, _] : row) {
        if (find_name(tables.inputs, i) == tables.inputs.size()) {
          throw Error(ErrorCode::UnknownSymbol, "table column for undeclared symbol '" + i + "'");
        }
      }
    }
  }
  return from_tables(tables.states, tables.inputs, std::move(next), std::move(out));
}

StateId ReversibleAutomaton::state(std::string_view name) const {
  const std::size_t k = find_name(states_, name);
  if (k == states_.size()) throw Error(ErrorCode::UnknownState, "unknown state '" + std::string(name) + "'");
  return StateId{k};
}

SymbolId ReversibleAutomaton::symbol(std::string_view name) const {
  const std::size_t k = find_name(inputs_, name);
  if (k == inputs_.size()) throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
  return SymbolId{k};
}

StateId ReversibleAutomaton::next_state(StateId s, SymbolId i) const {
  if (index(s) >= num_states()) throw Error(ErrorCode::UnknownState, "state id out of range");
  if (index(i) >= num_inputs()) throw Error(ErrorCode::UnknownSymbol, "symbol id out of range");
  return next_state_[pair_index({s, i})];
}

SymbolId ReversibleAutomaton::output(StateId s, SymbolId i) const {
  if (index(s) >= num_states()) throw Error(ErrorCode::UnknownState, "state id out of range");
  if (index(i) >= num_inputs()) throw Error(ErrorCode::UnknownSymbol, "symbol id out of range");
  return output_[pair_index({s, i})];
}

AutomatonTables ReversibleAutomaton::tables() const {
  AutomatonTables t{states_, inputs_, {}, {}};
  for (std::size_t k = 0; k < num_pairs(); ++k) {
    const Pair p = pair_at(k);
    t.delta[name(p.state)][name(p.symbol)] = name(next_state_[k]);
    t.lambda[name(p.state)][name(p.symbol)] = name(output_[k]);
  }
  return t;
}

Permutation to_permutation(const ReversibleAutomaton& a) {
  std::vector<std::size_t> images(a.num_pairs());
  for (std::size_t k = 0; k < images.size(); ++k) images[k] = a.pair_index(step(a, a.pair_at(k)));
  return Permutation::from_images(std::move(images));
}

ReversibleAutomaton from_permutation(const Permutation& p, std::size_t n_states,
                                     std::size_t n_inputs) {
  if (n_states == 0 || n_inputs == 0 || p.degree() != n_states * n_inputs) {
    throw Error(ErrorCode::DimensionMismatch,
                "permutation of degree " + std::to_string(p.degree()) + " cannot be split into " +
                    std::to_string(n_states) + " states x " + std::to_string(n_inputs) + " symbols");
  }
  std::vector<std::string> states, inputs;
  for (std::size_t s = 0; s < n_states; ++s) states.push_back("s" + std::to_string(s + 1));
  for (std::size_t i = 0; i < n_inputs; ++i) inputs.push_back(std::to_string(i + 1));
  std::vector<StateId> next(p.degree());
  std::vector<SymbolId> out(p.degree());
  for (std::size_t k = 0; k < p.degree(); ++k) {
    next[k] = StateId{p(k) / n_inputs};
    out[k] = SymbolId{p(k) % n_inputs};
  }
  return ReversibleAutomaton::from_tables(std::move(states), std::move(inputs), std::move(next),
                                          std::move(out));
}

Pair step(const ReversibleAutomaton& a, Pair at) {
  return {a.next_state(at.state, at.symbol), a.output(at.state, at.symbol)};
}

Trajectory run_feedback(const ReversibleAutomaton& a, Pair start, std::uint64_t steps) {
  Trajectory t;
  t.steps.reserve(steps + 1);
  (void)a.next_state(start.state, start.symbol);  // throws on an invalid start pair
  t.steps.push_back(start);
  for (std::uint64_t n = 0; n < steps; ++n) t.steps.push_back(step(a, t.steps.back()));
  return t;
}

LabelVector canonical_labels(const ReversibleAutomaton& a) {
  LabelVector psi(a.num_pairs());
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = a.pair_at(k);
  return psi;
}

LabelVector evolve_labels(const ReversibleAutomaton& a, const LabelVector& psi,
                          std::uint64_t steps) {
  if (psi.size() != a.num_pairs()) {
    throw Error(ErrorCode::DimensionMismatch, "label vector has " + std::to_string(psi.size()) +
                                                  " entries, automaton has " +
                                                  std::to_string(a.num_pairs()) + " pairs");
  }
  const Permutation u = to_permutation(a).power(steps);
  LabelVector out(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) out[k] = psi[u(k)];
  return out;
}

WordRun run_word(const ReversibleAutomaton& a, StateId start, std::span<const SymbolId> word) {
  if (index(start) >= a.num_states()) throw Error(ErrorCode::UnknownState, "state id out of range");
  WordRun run{{}, start};
  run.outputs.reserve(word.size());
  for (SymbolId i : word) {
    run.outputs.push_back(a.output(run.final_state, i));
    run.final_state = a.next_state(run.final_state, i);
  }
  return run;
}

ReversibleAutomaton reverse(const ReversibleAutomaton& a) {
  std::vector<StateId> next(a.num_pairs());
  std::vector<SymbolId> out(a.num_pairs());
  for (std::size_t k = 0; k < a.num_pairs(); ++k) {
    const Pair from = a.pair_at(k);
    const Pair to = step(a, from);
    next[a.pair_index(to)] = from.state;
    out[a.pair_index(to)] = from.symbol;
  }
  return ReversibleAutomaton::from_tables(a.states(), a.inputs(), std::move(next), std::move(out));
}

std::vector<SymbolId> parse_word(const ReversibleAutomaton& a, std::string_view text) {
  std::vector<SymbolId> word;
  if (text.empty()) return word;
  const bool single_char = std::all_of(a.inputs().begin(), a.inputs().end(),
                                       [](const std::string& s) { return s.size() == 1; });
  if (text.find(',') != std::string_view::npos || !single_char) {
    for (const auto& tok : text::split(text, ',')) word.push_back(a.symbol(text::trim(tok)));
  } else {
    for (char c : text) word.push_back(a.symbol(std::string_view(&c, 1)));
  }
  return word;
}

std::string format_pair(const ReversibleAutomaton& a, Pair p) {
  return "(" + a.name(p.state) + "," + a.name(p.symbol) + ")";
}

}  // namespace revcomp
