#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "revcomp/automaton.hpp"

namespace revcomp::testing {

// Transition/output table with two states and two symbols.
inline AutomatonTables table1() {
  return {{"s1", "s2"},
          {"1", "2"},
          {{"s1", {{"1", "s2"}, {"2", "s1"}}}, {"s2", {{"1", "s2"}, {"2", "s1"}}}},
          {{"s1", {{"1", "1"}, {"2", "2"}}}, {"s2", {{"1", "2"}, {"2", "1"}}}}};
}

// Three states, two symbols; permutation order 4.
inline AutomatonTables table2() {
  return {{"s1", "s2", "s3"},
          {"1", "2"},
          {{"s1", {{"1", "s1"}, {"2", "s3"}}},
           {"s2", {{"1", "s2"}, {"2", "s1"}}},
           {"s3", {{"1", "s3"}, {"2", "s2"}}}},
          {{"s1", {{"1", "2"}, {"2", "2"}}},
           {"s2", {{"1", "1"}, {"2", "1"}}},
           {"s3", {{"1", "1"}, {"2", "2"}}}}};
}

// delta(s, i) = s, lambda(s, i) = i.
inline AutomatonTables identity_tables(std::size_t n_states, std::size_t n_inputs) {
  AutomatonTables t;
  for (std::size_t s = 0; s < n_states; ++s) t.states.push_back("s" + std::to_string(s + 1));
  for (std::size_t i = 0; i < n_inputs; ++i) t.inputs.push_back(std::to_string(i + 1));
  for (const auto& s : t.states) {
    for (const auto& i : t.inputs) {
      t.delta[s][i] = s;
      t.lambda[s][i] = i;
    }
  }
  return t;
}

// Reversible tables drawn by shuffling S x I directly, without going through
// the library's permutation code.
inline AutomatonTables random_reversible_tables(std::mt19937_64& rng, std::size_t n_states,
                                                std::size_t n_inputs) {
  AutomatonTables t = identity_tables(n_states, n_inputs);
  std::vector<std::size_t> image(n_states * n_inputs);
  std::iota(image.begin(), image.end(), std::size_t{0});
  std::shuffle(image.begin(), image.end(), rng);
  for (std::size_t k = 0; k < image.size(); ++k) {
    const auto& s = t.states[k / n_inputs];
    const auto& i = t.inputs[k % n_inputs];
    t.delta[s][i] = t.states[image[k] / n_inputs];
    t.lambda[s][i] = t.inputs[image[k] % n_inputs];
  }
  return t;
}

inline std::vector<std::size_t> random_one_line(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{1});
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace revcomp::testing
