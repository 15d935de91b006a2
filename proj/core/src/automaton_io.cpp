#include <nlohmann/json.hpp>

#include "revcomp/automaton.hpp"
#include "revcomp/error.hpp"

namespace revcomp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> name_list(const ordered_json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorCode::ParseError, std::string("automaton file needs a \"") + key + "\" list");
  }
  std::vector<std::string> names;
  for (const auto& v : doc[key]) {
    if (!v.is_string()) {
      throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" entries must be strings");
    }
    names.push_back(v.get<std::string>());
  }
  return names;
}

std::map<std::string, std::map<std::string, std::string>> nested_table(const ordered_json& doc,
                                                                       const char* key) {
  if (!doc.contains(key) || !doc[key].is_object()) {
    throw Error(ErrorCode::ParseError, std::string("automaton file needs a \"") + key + "\" object");
  }
  std::map<std::string, std::map<std::string, std::string>> table;
  for (const auto& [state, row] : doc[key].items()) {
    if (!row.is_object()) {
      throw Error(ErrorCode::ParseError,
                  std::string("\"") + key + "\" row for '" + state + "' must be an object");
    }
    auto& out = table[state];
    for (const auto& [symbol, value] : row.items()) {
      if (!value.is_string()) {
        throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" entry ('" + state +
                                               "', '" + symbol + "') must be a string");
      }
      out[symbol] = value.get<std::string>();
    }
  }
  return table;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

AutomatonTables parse_automaton(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed automaton file: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "automaton file must hold a JSON object");
  AutomatonTables t;
  t.states = name_list(doc, "states");
  t.inputs = name_list(doc, "inputs");
  t.delta = nested_table(doc, "delta");
  t.lambda = nested_table(doc, "lambda");
  return t;
}

std::string format_automaton(const ReversibleAutomaton& a) {
  ordered_json doc;
  doc["states"] = a.states();
  doc["inputs"] = a.inputs();
  ordered_json delta = ordered_json::object();
  ordered_json lambda = ordered_json::object();
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    ordered_json drow = ordered_json::object();
    ordered_json lrow = ordered_json::object();
    for (std::size_t i = 0; i < a.num_inputs(); ++i) {
      const Pair to = step(a, {StateId{s}, SymbolId{i}});
      drow[a.inputs()[i]] = a.name(to.state);
      lrow[a.inputs()[i]] = a.name(to.symbol);
    }
    delta[a.states()[s]] = std::move(drow);
    lambda[a.states()[s]] = std::move(lrow);
  }
  doc["delta"] = std::move(delta);
  doc["lambda"] = std::move(lambda);
  return doc.dump(2) + "\n";
}

std::string automaton_to_dot(const ReversibleAutomaton& a) {
  std::string out = "digraph automaton {\n  rankdir=LR;\n";
  for (const auto& s : a.states()) out += "  " + dot_quote(s) + ";\n";
  for (std::size_t k = 0; k < a.num_pairs(); ++k) {
    const Pair from = a.pair_at(k);
    const Pair to = step(a, from);
    out += "  " + dot_quote(a.name(from.state)) + " -> " + dot_quote(a.name(to.state)) +
           " [label=" + dot_quote(a.name(from.symbol) + "/" + a.name(to.symbol)) + "];\n";
  }
  return out + "}\n";
}

}  // namespace revcomp
