#include "bb/decider_repwl.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace bb {

namespace {

bool all_zero(const std::string& word) {
  return std::all_of(word.begin(), word.end(),
                     [](char c) { return c == '0'; });
}

void append_block(std::string& out, const RepBlock& b) {
  out.push_back('(');
  out += b.word;
  out += ")^";
  if (b.count == RepBlock::kPlus)
    out += "+";
  else
    out += std::to_string(b.count);
}

// Regroups runs of adjacent equal words: exact counts add and saturate at
// T+, and a T+ group absorbs equal-word neighbours outright (w^{>=T+c} is a
// subset of w^{>=T}, so absorption only widens the described set).
std::vector<RepBlock> remerge(std::vector<RepBlock> side, int threshold) {
  std::vector<RepBlock> out;
  for (RepBlock& b : side) {
    if (!out.empty() && out.back().word == b.word) {
      if (out.back().count == RepBlock::kPlus || b.count == RepBlock::kPlus)
        out.back().count = RepBlock::kPlus;
      else if ((out.back().count += b.count) >= threshold)
        out.back().count = RepBlock::kPlus;
    } else {
      out.push_back(std::move(b));
    }
  }
  return out;
}

void strip_blank_end_zeros(RegexConfig& cfg) {
  while (!cfg.left.empty() && all_zero(cfg.left.front().word))
    cfg.left.erase(cfg.left.begin());
  while (!cfg.right.empty() && all_zero(cfg.right.back().word))
    cfg.right.pop_back();
}

}  // namespace

std::string RegexConfig::serialize() const {
  std::string out;
  for (const RepBlock& b : left) {
    append_block(out, b);
    out.push_back(' ');
  }
  if (facing_right) {
    out.push_back(static_cast<char>('A' + state));
    out.push_back('>');
  } else {
    out.push_back('<');
    out.push_back(static_cast<char>('A' + state));
  }
  for (const RepBlock& b : right) {
    out.push_back(' ');
    append_block(out, b);
  }
  return out;
}

RegexConfig initial_regex_config() { return RegexConfig{}; }

RegexConfig normalize_config(RegexConfig cfg, int threshold) {
  for (auto* side : {&cfg.left, &cfg.right})
    for (RepBlock& b : *side)
      if (b.count != RepBlock::kPlus && b.count >= threshold)
        b.count = RepBlock::kPlus;
  strip_blank_end_zeros(cfg);
  return cfg;
}

BlockSimResult block_simulate(const TransitionTable& tm, const RegexConfig& cfg,
                              const RepwlParams& params) {
  RegexConfig next = cfg;
  RepBlock faced;
  if (next.facing_right) {
    if (next.right.empty())
      faced = RepBlock{std::string(static_cast<size_t>(params.block_len), '0'),
                       1};
    else {
      faced = next.right.front();
      next.right.erase(next.right.begin());
    }
  } else {
    if (next.left.empty())
      faced = RepBlock{std::string(static_cast<size_t>(params.block_len), '0'),
                       1};
    else {
      faced = next.left.back();
      next.left.pop_back();
    }
  }
  if (faced.count == RepBlock::kPlus)
    throw std::logic_error("block_simulate called with head facing a T+ block");

  // Materialize the faced group and run the machine inside it.
  const int len = params.block_len * faced.count;
  std::string cells;
  cells.reserve(static_cast<size_t>(len));
  for (int i = 0; i < faced.count; ++i) cells += faced.word;

  int pos = next.facing_right ? 0 : len - 1;
  int state = next.state;
  bool exited_right;
  int64_t steps = 0;
  while (true) {
    if (steps >= params.block_budget)
      return BlockSimResult{BlockSimKind::BudgetExceeded, {}};
    uint8_t sym = static_cast<uint8_t>(cells[static_cast<size_t>(pos)] - '0');
    auto t = tm.transition(state, sym);
    if (!t) return BlockSimResult{BlockSimKind::Halted, {}};
    cells[static_cast<size_t>(pos)] = static_cast<char>('0' + t->write);
    state = t->next;
    pos += t->dir == Dir::Right ? 1 : -1;
    ++steps;
    if (pos < 0) {
      exited_right = false;
      break;
    }
    if (pos >= len) {
      exited_right = true;
      break;
    }
  }

  next.state = static_cast<uint8_t>(state);
  next.facing_right = exited_right;
  std::vector<RepBlock> words;
  words.reserve(static_cast<size_t>(faced.count));
  for (int i = 0; i < faced.count; ++i)
    words.push_back(RepBlock{
        cells.substr(static_cast<size_t>(i * params.block_len),
                     static_cast<size_t>(params.block_len)),
        1});

  if (exited_right) {
    // Region now sits left of the head.
    next.left.insert(next.left.end(), words.begin(), words.end());
    next.left = remerge(std::move(next.left), params.threshold);
  } else {
    next.right.insert(next.right.begin(), words.begin(), words.end());
    next.right = remerge(std::move(next.right), params.threshold);
  }
  strip_blank_end_zeros(next);
  return BlockSimResult{BlockSimKind::Stepped, std::move(next)};
}

std::pair<RegexConfig, RegexConfig> regex_branch(const RegexConfig& cfg,
                                                 int threshold) {
  RepBlock faced = cfg.facing_right ? cfg.right.front() : cfg.left.back();
  if (faced.count != RepBlock::kPlus)
    throw std::logic_error("regex_branch called with head facing a constant block");

  auto rewrite = [&](int tail_count) {
    RegexConfig out = cfg;
    RepBlock one{faced.word, 1};
    RepBlock tail{faced.word, tail_count};
    if (out.facing_right) {
      out.right.erase(out.right.begin());
      out.right.insert(out.right.begin(), tail);
      out.right.insert(out.right.begin(), one);
    } else {
      out.left.pop_back();
      out.left.push_back(tail);
      out.left.push_back(one);
    }
    return out;
  };
  RegexConfig branch1 = rewrite(threshold - 1);
  RegexConfig branch2 = rewrite(RepBlock::kPlus);
  return {std::move(branch1), std::move(branch2)};
}

RepwlResult decide_repwl(const TransitionTable& tm, const RepwlParams& params) {
  RepwlResult result;
  std::deque<RegexConfig> to_visit;
  to_visit.push_back(initial_regex_config());
  std::unordered_set<std::string> visited;

  while (static_cast<int64_t>(visited.size()) < params.max_nodes &&
         !to_visit.empty()) {
    RegexConfig cfg = std::move(to_visit.front());
    to_visit.pop_front();
    std::string key = cfg.serialize();
    if (!visited.insert(key).second) continue;

    RepwlNode node;
    node.config = cfg;
    const RepBlock* faced = nullptr;
    if (cfg.facing_right && !cfg.right.empty()) faced = &cfg.right.front();
    if (!cfg.facing_right && !cfg.left.empty()) faced = &cfg.left.back();

    if (faced && faced->count == RepBlock::kPlus) {
      node.branching = true;
      auto [b1, b2] = regex_branch(cfg, params.threshold);
      node.successors.push_back(b1.serialize());
      node.successors.push_back(b2.serialize());
      result.nodes.push_back(std::move(node));
      to_visit.push_back(std::move(b1));
      to_visit.push_back(std::move(b2));
    } else {
      BlockSimResult sim = block_simulate(tm, cfg, params);
      if (sim.kind == BlockSimKind::Halted) {
        result.halted_in_block = true;
        result.node_count = static_cast<int64_t>(visited.size());
        result.nodes.push_back(std::move(node));
        return result;
      }
      if (sim.kind == BlockSimKind::BudgetExceeded) {
        result.budget_exceeded = true;
        result.node_count = static_cast<int64_t>(visited.size());
        result.nodes.push_back(std::move(node));
        return result;
      }
      node.successors.push_back(sim.next.serialize());
      result.nodes.push_back(std::move(node));
      to_visit.push_back(std::move(sim.next));
    }
  }

  result.node_count = static_cast<int64_t>(visited.size());
  if (to_visit.empty() &&
      static_cast<int64_t>(visited.size()) < params.max_nodes) {
    result.status = Status::Nonhalt;  // graph closed below the node limit
  }
  return result;
}

std::string repwl_decider_id(const RepwlParams& p) {
  return "REPWL_params_" + std::to_string(p.block_len) + "_" +
         std::to_string(p.threshold) + "_" + std::to_string(p.block_budget) +
         "_" + std::to_string(p.max_nodes);
}

bool regex_matches(const RegexConfig& node, const std::vector<uint8_t>& tape,
                   int64_t tape_origin_pos, int64_t head, int state,
                   bool facing_right, int block_len, int threshold) {
  if (node.state != state || node.facing_right != facing_right) return false;

  int64_t extent = static_cast<int64_t>(tape.size());
  auto sym_at = [&](int64_t pos) -> uint8_t {
    int64_t i = pos - tape_origin_pos;
    if (i < 0 || i >= extent) return 0;
    return tape[static_cast<size_t>(i)];
  };

  // One side viewed from the head outward: symbol accessor, the offset past
  // which everything is blank, and the groups with words in outward order.
  struct Side {
    std::function<uint8_t(int64_t)> sym;
    int64_t known;
    std::vector<RepBlock> groups;
  };

  // The faced cell belongs to the side the head points into.
  int64_t left_edge = facing_right ? head - 1 : head;
  int64_t right_edge = facing_right ? head : head + 1;

  Side left;
  left.sym = [&, left_edge](int64_t i) { return sym_at(left_edge - i); };
  left.known = left_edge - tape_origin_pos + 1;
  for (auto it = node.left.rbegin(); it != node.left.rend(); ++it) {
    RepBlock b = *it;
    std::reverse(b.word.begin(), b.word.end());
    left.groups.push_back(std::move(b));
  }

  Side right;
  right.sym = [&, right_edge](int64_t i) { return sym_at(right_edge + i); };
  right.known = tape_origin_pos + extent - right_edge;
  right.groups = node.right;

  auto match_side = [&](const Side& side) {
    auto zero_from = [&](int64_t off) {
      for (int64_t i = off; i < side.known; ++i)
        if (side.sym(i) != 0) return false;
      return true;
    };
    auto copy_matches = [&](const RepBlock& b, int64_t at) {
      for (int i = 0; i < block_len; ++i)
        if (side.sym(at + i) !=
            static_cast<uint8_t>(b.word[static_cast<size_t>(i)] - '0'))
          return false;
      return true;
    };
    std::function<bool(size_t, int64_t)> rec = [&](size_t g, int64_t off) {
      if (g == side.groups.size()) return zero_from(off);
      const RepBlock& b = side.groups[g];
      if (b.count != RepBlock::kPlus) {
        for (int c = 0; c < b.count; ++c)
          if (!copy_matches(b, off + int64_t{c} * block_len)) return false;
        return rec(g + 1, off + int64_t{b.count} * block_len);
      }
      // T+ group: k >= T copies, backtracking over k. Past the known extent
      // only blank remains, which can supply copies of all-zero words; blank
      // offsets all look alike, so one recursion there settles it.
      for (int64_t k = 0;; ++k) {
        int64_t at = off + k * block_len;
        if (at >= side.known) {
          if (k >= threshold) return rec(g + 1, at);
          if (!all_zero(b.word)) return false;
          return rec(g + 1, off + int64_t{threshold} * block_len);
        }
        if (k >= threshold && rec(g + 1, at)) return true;
        if (!copy_matches(b, at)) return false;
      }
    };
    return rec(0, 0);
  };

  return match_side(left) && match_side(right);
}

}  // namespace bb
