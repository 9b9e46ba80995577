#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bb/machine.hpp"
#include "bb/record.hpp"

namespace bb {

struct RepwlParams {
  int block_len = 2;        // l
  int threshold = 3;        // T: exponents are 1..T-1 or "T or more"
  int64_t block_budget = 320;   // B: max steps inside one block simulation
  int64_t max_nodes = 150001;   // N: max distinct graph nodes visited
};

// One repeated word: `count` in 1..T-1 for exact groups, kPlus for "T+".
struct RepBlock {
  static constexpr int kPlus = -1;
  std::string word;  // block_len tape symbols, as characters '0'..
  int count = 1;

  bool operator==(const RepBlock&) const = default;
};

// Tape abstracted as repeated fixed-length words around a directional head.
struct RegexConfig {
  // Tape order. left.back() and right.front() are adjacent to the head.
  std::vector<RepBlock> left;
  std::vector<RepBlock> right;
  uint8_t state = 0;
  bool facing_right = true;

  // Canonical form, e.g. `(01)^1 D> (10)^3+` (blank sides omitted).
  std::string serialize() const;
  bool operator==(const RegexConfig&) const = default;
};

RegexConfig initial_regex_config();

// Counts saturated at T+ and all-zero groups absorbed into the blank ends.
// Adjacent-group merging is applied where block simulation attaches its
// output, not here, so regex-branch results stay intact.
RegexConfig normalize_config(RegexConfig cfg, int threshold);

enum class BlockSimKind : uint8_t { Stepped, Halted, BudgetExceeded };

struct BlockSimResult {
  BlockSimKind kind = BlockSimKind::Stepped;
  RegexConfig next;  // valid when kind == Stepped
};

// Concrete simulation inside the faced constant block (a 0^l block is
// materialized when the head faces the blank) until the head leaves it; the
// rewritten words are re-merged into counts on re-attachment.
BlockSimResult block_simulate(const TransitionTable& tm, const RegexConfig& cfg,
                              const RepwlParams& params);

// Head faces a T+ block: branch 1 rewrites (w)^T+ as (w)^1 (w)^(T-1),
// branch 2 as (w)^1 (w)^T+.
std::pair<RegexConfig, RegexConfig> regex_branch(const RegexConfig& cfg,
                                                 int threshold);

struct RepwlNode {
  RegexConfig config;
  std::vector<std::string> successors;  // serialized successor keys
  bool branching = false;
};

struct RepwlResult {
  Status status = Status::Unknown;
  int64_t node_count = 0;
  bool halted_in_block = false;
  bool budget_exceeded = false;
  // The closed graph (populated on Nonhalt, capped otherwise).
  std::vector<RepwlNode> nodes;
};

RepwlResult decide_repwl(const TransitionTable& tm, const RepwlParams& params);

std::string repwl_decider_id(const RepwlParams& params);

// True when the concrete configuration, word-grouped from the head outward,
// is matched by the node's regular expression.
bool regex_matches(const RegexConfig& node, const std::vector<uint8_t>& tape,
                   int64_t tape_origin_pos, int64_t head, int state,
                   bool facing_right, int block_len, int threshold);

}  // namespace bb
