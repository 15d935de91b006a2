#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revcomp/automaton.hpp"

namespace revcomp {

// A set of ground indices; the logic machinery is limited to 64 states.
using StateSet = std::uint64_t;
inline constexpr std::size_t kMaxLogicStates = 64;
inline constexpr std::size_t kMaxLogicElements = 512;

// Disjoint cover of a named ground set. Blocks are kept canonical: members
// ascending, blocks ordered by least member.
class Partition {
 public:
  // Throws InvalidPartition unless the blocks are nonempty, disjoint and cover the ground.
  static Partition from_blocks(std::vector<std::string> ground,
                               std::vector<std::vector<std::size_t>> blocks);
  // Groups ground indices that share a label.
  template <typename Label>
  static Partition from_labels(std::vector<std::string> ground, const std::vector<Label>& labels);

  const std::vector<std::string>& ground() const noexcept { return ground_; }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }

  bool is_discrete() const noexcept { return blocks_.size() == ground_.size(); }
  // Every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition&) const = default;

 private:
  Partition() = default;
  std::vector<std::string> ground_;
  std::vector<std::vector<std::size_t>> blocks_;
};

// "{{s1},{s2,s3}}"
std::string format_partition(const Partition& p);

// States share a block iff they emit the same output sequence (run_word)
// when fed `word`. The empty word yields the single-block partition.
Partition experiment_partition(const ReversibleAutomaton& a, std::span<const SymbolId> word);

struct WitnessedPartition {
  Partition partition;
  std::vector<SymbolId> witness;  // shortest, then lexicographically least
};

// Distinct experiment partitions over all nonempty words of length <= max_len,
// in order of first discovery. Throws LogicTooLarge when the word space
// exceeds 2^22 words.
std::vector<WitnessedPartition> partitions_up_to(const ReversibleAutomaton& a,
                                                 std::size_t max_len);

// Pasting of the Boolean algebras generated by a family of partitions.
// Elements are unions of blocks of some source partition; x <= y holds iff it
// holds inside some common source algebra, closed transitively. Complement
// is set complement relative to the ground.
class PartitionLogic {
 public:
  using Element = std::size_t;  // index into elements()

  const std::vector<std::string>& ground() const noexcept { return ground_; }
  const std::vector<StateSet>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  Element bottom() const noexcept { return 0; }
  Element top() const noexcept { return elements_.size() - 1; }
  std::optional<Element> find(StateSet set) const;

  bool leq(Element x, Element y) const { return order_[x][y]; }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }
  Element complement(Element x) const { return complement_[x]; }

  // Greatest lower / least upper bound in the pasted order, if one exists.
  std::optional<Element> meet(Element x, Element y) const { return meet_[x][y]; }
  std::optional<Element> join(Element x, Element y) const { return join_[x][y]; }

  // Elements covering the bottom.
  std::vector<Element> atoms() const;
  // Pairs (x, y) where y covers x.
  std::vector<std::pair<Element, Element>> covers() const;

  std::string format_element(Element x) const;

 private:
  friend PartitionLogic build_partition_logic(std::span<const Partition> partitions);
  PartitionLogic() = default;

  std::vector<std::string> ground_;
  std::vector<StateSet> elements_;  // ordered by (cardinality, bit pattern)
  std::vector<std::vector<bool>> order_;
  std::vector<Element> complement_;
  std::vector<std::vector<std::optional<Element>>> meet_;
  std::vector<std::vector<std::optional<Element>>> join_;
};

// Throws GroundMismatch when the grounds differ, LogicTooLarge beyond
// kMaxLogicStates states or kMaxLogicElements elements.
PartitionLogic build_partition_logic(std::span<const Partition> partitions);

// Exactly bottom, top and four pairwise-incomparable elements forming two
// complementary pairs.
bool is_mo2(const PartitionLogic& logic);

using ElementTriple = std::array<PartitionLogic::Element, 3>;

// Some (x, y, z) with every needed meet and join defined and
// x ^ (y v z) != (x ^ y) v (x ^ z). Searched exhaustively in element order.
std::optional<ElementTriple> find_nondistributive_triple(const PartitionLogic& logic);

// {"ground": [...], "elements": [...], "order": [[x, y], ...] (strict x < y),
//  "complement": [...]}
std::string logic_to_json(const PartitionLogic& logic);
// Hasse diagram over the covering relation.
std::string logic_to_dot(const PartitionLogic& logic);

template <typename Label>
Partition Partition::from_labels(std::vector<std::string> ground, const std::vector<Label>& labels) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> representative;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::size_t b = 0;
    while (b < blocks.size() && !(labels[representative[b]] == labels[i])) ++b;
    if (b == blocks.size()) {
      blocks.emplace_back();
      representative.push_back(i);
    }
    blocks[b].push_back(i);
  }
  return from_blocks(std::move(ground), std::move(blocks));
}

}  // namespace revcomp
