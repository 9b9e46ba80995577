#include "bb/simulate.hpp"

#include <algorithm>
#include <cstring>

namespace bb {

void Configuration::reset() {
  if (!cells_.empty()) {
    int64_t lo = std::max<int64_t>(min_pos_ + origin_, 0);
    int64_t hi = std::min<int64_t>(max_pos_ + origin_ + 1,
                                   static_cast<int64_t>(cells_.size()));
    if (hi > lo)
      std::memset(cells_.data() + lo, 0, static_cast<size_t>(hi - lo));
  } else {
    cells_.assign(256, 0);
    origin_ = 128;
  }
  head_ = 0;
  state_ = 0;
  steps_ = 0;
  min_pos_ = 0;
  max_pos_ = 0;
}

int64_t Configuration::sigma() const {
  int64_t count = 0;
  for (int64_t p = min_pos_; p <= max_pos_; ++p)
    if (cell(p) != 0) ++count;
  return count;
}

void Configuration::grow_to(int64_t pos) {
  int64_t i = pos + origin_;
  if (i >= 0 && i < static_cast<int64_t>(cells_.size())) return;
  size_t n = cells_.size();
  std::vector<uint8_t> bigger(3 * n, 0);
  std::copy(cells_.begin(), cells_.end(), bigger.begin() + n);
  cells_.swap(bigger);
  origin_ += static_cast<int64_t>(n);
}

void Configuration::poke(int64_t pos, uint8_t symbol) {
  grow_to(pos);
  cells_[static_cast<size_t>(pos + origin_)] = symbol;
  min_pos_ = std::min(min_pos_, pos);
  max_pos_ = std::max(max_pos_, pos);
}

void Configuration::set_head(int64_t h) {
  grow_to(h);
  head_ = h;
  min_pos_ = std::min(min_pos_, h);
  max_pos_ = std::max(max_pos_, h);
}

bool Configuration::step_applied(const TransitionTable& tm) {
  uint8_t sym = cells_[static_cast<size_t>(head_ + origin_)];
  if (!tm.is_defined(state_, sym)) {
    ++steps_;  // the halting step is counted
    return false;
  }
  const Transition& t = tm.at(state_, sym);
  cells_[static_cast<size_t>(head_ + origin_)] = t.write;
  head_ += t.dir == Dir::Left ? -1 : 1;
  grow_to(head_);
  if (head_ < min_pos_) min_pos_ = head_;
  if (head_ > max_pos_) max_pos_ = head_;
  state_ = t.next;
  ++steps_;
  return true;
}

StepOutcome step(const TransitionTable& tm, Configuration& cfg) {
  return cfg.step_applied(tm) ? StepOutcome::Stepped
                              : StepOutcome::HaltedOnUndefined;
}

SimOutcome simulate(const TransitionTable& tm, int64_t max_steps,
                    Configuration& cfg) {
  cfg.reset();
  for (int64_t i = 0; i < max_steps; ++i) {
    int state = cfg.state();
    uint8_t sym = cfg.read();
    if (!cfg.step_applied(tm)) {
      return SimOutcome{.halted = true,
                        .steps = cfg.steps(),
                        .sigma = halted_sigma(cfg),
                        .space = cfg.space(),
                        .halt_state = state,
                        .halt_symbol = sym};
    }
  }
  return SimOutcome{.halted = false, .steps = cfg.steps()};
}

SimOutcome simulate(const TransitionTable& tm, int64_t max_steps) {
  Configuration cfg;
  return simulate(tm, max_steps, cfg);
}

int64_t halted_sigma(const Configuration& cfg) {
  return cfg.sigma() + (cfg.read() == 0 ? 1 : 0);
}

}  // namespace bb
