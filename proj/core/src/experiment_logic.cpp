#include "revcomp/experiment_logic.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "revcomp/error.hpp"

namespace revcomp {

namespace {

std::string format_block(const std::vector<std::string>& ground,
                         const std::vector<std::size_t>& members) {
  std::string out = "{";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) out += ',';
    out += ground[members[k]];
  }
  return out + "}";
}

StateSet ground_mask(std::size_t n) {
  return n == 64 ? ~StateSet{0} : (StateSet{1} << n) - 1;
}

struct CardinalityOrder {
  bool operator()(StateSet a, StateSet b) const {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  }
};

}  // namespace

Partition Partition::from_blocks(std::vector<std::string> ground,
                                 std::vector<std::vector<std::size_t>> blocks) {
  std::vector<bool> covered(ground.size(), false);
  for (auto& block : blocks) {
    if (block.empty()) throw Error(ErrorCode::InvalidPartition, "partition blocks must be nonempty");
    std::sort(block.begin(), block.end());
    for (std::size_t i : block) {
      if (i >= ground.size()) throw Error(ErrorCode::InvalidPartition, "block member outside the ground set");
      if (covered[i]) {
        throw Error(ErrorCode::InvalidPartition,
                    "state '" + ground[i] + "' appears in more than one block");
      }
      covered[i] = true;
    }
  }
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!covered[i]) throw Error(ErrorCode::InvalidPartition, "state '" + ground[i] + "' is in no block");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  Partition p;
  p.ground_ = std::move(ground);
  p.blocks_ = std::move(blocks);
  return p;
}

bool Partition::refines(const Partition& coarser) const {
  if (ground_ != coarser.ground_) return false;
  std::vector<std::size_t> owner(ground_.size());
  for (std::size_t b = 0; b < coarser.blocks_.size(); ++b)
    for (std::size_t i : coarser.blocks_[b]) owner[i] = b;
  for (const auto& block : blocks_)
    for (std::size_t i : block)
      if (owner[i] != owner[block.front()]) return false;
  return true;
}

std::string format_partition(const Partition& p) {
  std::string out = "{";
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    if (b) out += ',';
    out += format_block(p.ground(), p.blocks()[b]);
  }
  return out + "}";
}

Partition experiment_partition(const ReversibleAutomaton& a, std::span<const SymbolId> word) {
  std::vector<std::vector<SymbolId>> outputs;
  outputs.reserve(a.num_states());
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    outputs.push_back(run_word(a, StateId{s}, word).outputs);
  }
  return Partition::from_labels(a.states(), outputs);
}

std::vector<WitnessedPartition> partitions_up_to(const ReversibleAutomaton& a,
                                                 std::size_t max_len) {
  constexpr std::uint64_t kMaxWords = std::uint64_t{1} << 22;
  std::uint64_t total = 0, level = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    level *= a.num_inputs();
    total += level;
    if (level > kMaxWords || total > kMaxWords) {
      throw Error(ErrorCode::LogicTooLarge, "word space up to length " + std::to_string(max_len) +
                                                " exceeds " + std::to_string(kMaxWords) + " words");
    }
  }

  // Each frontier node tracks, per start state, the current state and the
  // class of its output sequence so far; children refine the classes.
  struct Node {
    std::vector<SymbolId> word;
    std::vector<StateId> current;
    std::vector<std::size_t> label;
  };
  const std::size_t n = a.num_states();
  std::vector<Node> frontier(1);
  for (std::size_t s = 0; s < n; ++s) {
    frontier[0].current.push_back(StateId{s});
    frontier[0].label.push_back(0);
  }

  std::vector<WitnessedPartition> found;
  std::set<std::vector<std::vector<std::size_t>>> seen;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    next.reserve(frontier.size() * a.num_inputs());
    for (const Node& node : frontier) {
      for (std::size_t i = 0; i < a.num_inputs(); ++i) {
        Node child{node.word, std::vector<StateId>(n), std::vector<std::size_t>(n)};
        child.word.push_back(SymbolId{i});
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> renumber;
        for (std::size_t s = 0; s < n; ++s) {
          const Pair to = step(a, {node.current[s], SymbolId{i}});
          child.current[s] = to.state;
          const auto key = std::pair{node.label[s], index(to.symbol)};
          child.label[s] = renumber.try_emplace(key, renumber.size()).first->second;
        }
        Partition p = Partition::from_labels(a.states(), child.label);
        if (seen.insert(p.blocks()).second) found.push_back({std::move(p), child.word});
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return found;
}

std::optional<PartitionLogic::Element> PartitionLogic::find(StateSet set) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), set, CardinalityOrder{});
  if (it == elements_.end() || *it != set) return std::nullopt;
  return static_cast<Element>(it - elements_.begin());
}

std::vector<PartitionLogic::Element> PartitionLogic::atoms() const {
  std::vector<Element> out;
  for (const auto& [lo, hi] : covers())
    if (lo == bottom()) out.push_back(hi);
  return out;
}

std::vector<std::pair<PartitionLogic::Element, PartitionLogic::Element>> PartitionLogic::covers()
    const {
  std::vector<std::pair<Element, Element>> out;
  for (Element x = 0; x < size(); ++x) {
    for (Element y = 0; y < size(); ++y) {
      if (x == y || !leq(x, y)) continue;
      bool covering = true;
      for (Element z = 0; z < size() && covering; ++z) {
        if (z != x && z != y && leq(x, z) && leq(z, y)) covering = false;
      }
      if (covering) out.emplace_back(x, y);
    }
  }
  return out;
}

std::string PartitionLogic::format_element(Element x) const {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (elements_[x] >> i & 1) members.push_back(i);
  return format_block(ground_, members);
}

PartitionLogic build_partition_logic(std::span<const Partition> partitions) {
  if (partitions.empty()) {
    throw Error(ErrorCode::GroundMismatch, "a partition logic needs at least one partition");
  }
  const auto& ground = partitions.front().ground();
  for (const auto& p : partitions) {
    if (p.ground() != ground) {
      throw Error(ErrorCode::GroundMismatch, "partitions are over different ground sets");
    }
  }
  if (ground.size() > kMaxLogicStates) {
    throw Error(ErrorCode::LogicTooLarge, "partition logics are limited to " +
                                              std::to_string(kMaxLogicStates) + " states");
  }

  // Block unions of each source Boolean algebra.
  std::vector<std::vector<StateSet>> algebras;
  std::set<StateSet, CardinalityOrder> all{0, ground_mask(ground.size())};
  for (const auto& p : partitions) {
    if (p.num_blocks() > 9 || (std::size_t{1} << p.num_blocks()) > kMaxLogicElements) {
      throw Error(ErrorCode::LogicTooLarge, "partition with " + std::to_string(p.num_blocks()) +
                                                " blocks generates too many elements");
    }
    std::vector<StateSet> block_sets;
    for (const auto& block : p.blocks()) {
      StateSet s = 0;
      for (std::size_t i : block) s |= StateSet{1} << i;
      block_sets.push_back(s);
    }
    auto& algebra = algebras.emplace_back();
    for (std::size_t mask = 0; mask < (std::size_t{1} << block_sets.size()); ++mask) {
      StateSet u = 0;
      for (std::size_t b = 0; b < block_sets.size(); ++b)
        if (mask >> b & 1) u |= block_sets[b];
      algebra.push_back(u);
      all.insert(u);
    }
    if (all.size() > kMaxLogicElements) {
      throw Error(ErrorCode::LogicTooLarge, "partition logic exceeds " +
                                                std::to_string(kMaxLogicElements) + " elements");
    }
  }

  PartitionLogic logic;
  logic.ground_ = ground;
  logic.elements_.assign(all.begin(), all.end());
  const std::size_t n = logic.elements_.size();
  logic.order_.assign(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) logic.order_[x][x] = true;
  for (const auto& algebra : algebras) {
    for (StateSet x : algebra) {
      for (StateSet y : algebra) {
        if ((x & ~y) == 0) logic.order_[*logic.find(x)][*logic.find(y)] = true;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (logic.order_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (logic.order_[k][j]) logic.order_[i][j] = true;

  const StateSet full = ground_mask(ground.size());
  logic.complement_.resize(n);
  for (std::size_t x = 0; x < n; ++x) logic.complement_[x] = *logic.find(full & ~logic.elements_[x]);

  // The greatest lower bound, if any, is the unique bound of largest
  // cardinality that dominates every other bound; joins dually.
  auto extremal = [&](std::size_t x, std::size_t y, bool lower) -> std::optional<std::size_t> {
    std::vector<std::size_t> bounds;
    for (std::size_t z = 0; z < n; ++z) {
      const bool ok = lower ? (logic.order_[z][x] && logic.order_[z][y])
                            : (logic.order_[x][z] && logic.order_[y][z]);
      if (ok) bounds.push_back(z);
    }
    if (bounds.empty()) return std::nullopt;
    // Elements are sorted by cardinality, so the candidate sits at an end.
    const std::size_t candidate = lower ? bounds.back() : bounds.front();
    for (std::size_t z : bounds) {
      if (lower ? !logic.order_[z][candidate] : !logic.order_[candidate][z]) return std::nullopt;
    }
    return candidate;
  };
  logic.meet_.assign(n, std::vector<std::optional<std::size_t>>(n));
  logic.join_.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      logic.meet_[x][y] = logic.meet_[y][x] = extremal(x, y, true);
      logic.join_[x][y] = logic.join_[y][x] = extremal(x, y, false);
    }
  }
  return logic;
}

bool is_mo2(const PartitionLogic& logic) {
  if (logic.size() != 6) return false;
  std::vector<PartitionLogic::Element> middle;
  for (PartitionLogic::Element x = 0; x < logic.size(); ++x) {
    if (x == logic.bottom() || x == logic.top()) continue;
    if (!logic.leq(logic.bottom(), x) || !logic.leq(x, logic.top())) return false;
    middle.push_back(x);
  }
  for (std::size_t i = 0; i < middle.size(); ++i) {
    for (std::size_t j = i + 1; j < middle.size(); ++j) {
      if (logic.comparable(middle[i], middle[j])) return false;
    }
    const auto c = logic.complement(middle[i]);
    if (c == middle[i] || std::find(middle.begin(), middle.end(), c) == middle.end()) return false;
  }
  return true;
}

std::optional<ElementTriple> find_nondistributive_triple(const PartitionLogic& logic) {
  const std::size_t n = logic.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xy = logic.meet(x, y);
      if (!xy) continue;
      for (std::size_t z = 0; z < n; ++z) {
        const auto yz = logic.join(y, z);
        const auto xz = logic.meet(x, z);
        if (!yz || !xz) continue;
        const auto lhs = logic.meet(x, *yz);
        const auto rhs = logic.join(*xy, *xz);
        if (lhs && rhs && *lhs != *rhs) return ElementTriple{x, y, z};
      }
    }
  }
  return std::nullopt;
}

std::string logic_to_json(const PartitionLogic& logic) {
  nlohmann::ordered_json doc;
  doc["ground"] = logic.ground();
  auto elements = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < logic.size(); ++x) elements.push_back(logic.format_element(x));
  doc["elements"] = std::move(elements);
  auto order = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < logic.size(); ++x)
    for (std::size_t y = 0; y < logic.size(); ++y)
      if (x != y && logic.leq(x, y)) order.push_back({x, y});
  doc["order"] = std::move(order);
  auto complement = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < logic.size(); ++x) complement.push_back(logic.complement(x));
  doc["complement"] = std::move(complement);
  return doc.dump(2) + "\n";
}

std::string logic_to_dot(const PartitionLogic& logic) {
  std::string out = "digraph logic {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < logic.size(); ++x) {
    out += "  e" + std::to_string(x) + " [label=\"" + logic.format_element(x) + "\"];\n";
  }
  for (const auto& [lo, hi] : logic.covers()) {
    out += "  e" + std::to_string(lo) + " -> e" + std::to_string(hi) + ";\n";
  }
  return out + "}\n";
}

}  // namespace revcomp
