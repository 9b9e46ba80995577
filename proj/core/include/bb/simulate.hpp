#pragma once

#include <cstdint>
#include <vector>

#include "bb/machine.hpp"

namespace bb {

// Concrete execution state: growable tape with origin offset (cells outside
// the allocated window are zero), head position, machine state, step count
// and the extremal head positions visited so far.
class Configuration {
 public:
  Configuration() { reset(); }

  void reset();

  int64_t head() const { return head_; }
  int state() const { return state_; }
  int64_t steps() const { return steps_; }
  int64_t min_pos() const { return min_pos_; }
  int64_t max_pos() const { return max_pos_; }

  uint8_t cell(int64_t pos) const {
    int64_t i = pos + origin_;
    if (i < 0 || i >= static_cast<int64_t>(cells_.size())) return 0;
    return cells_[static_cast<size_t>(i)];
  }
  uint8_t read() const { return cell(head_); }

  // Count of non-zero cells (the sigma metric) and of visited cells.
  int64_t sigma() const;
  int64_t space() const { return max_pos_ - min_pos_ + 1; }

  // Used by step(); exposed for tests that build configurations by hand.
  void poke(int64_t pos, uint8_t symbol);
  void set_state(int s) { state_ = s; }
  void set_head(int64_t h);

  bool step_applied(const TransitionTable& tm);

 private:
  void grow_to(int64_t pos);

  std::vector<uint8_t> cells_;
  int64_t origin_ = 0;  // tape position p lives at cells_[p + origin_]
  int64_t head_ = 0;
  int state_ = 0;
  int64_t steps_ = 0;
  int64_t min_pos_ = 0;
  int64_t max_pos_ = 0;
};

enum class StepOutcome : uint8_t { Stepped, HaltedOnUndefined };

// Applies one step. HaltedOnUndefined counts the halting step (steps is
// incremented) and leaves the tape, head and state frozen.
StepOutcome step(const TransitionTable& tm, Configuration& cfg);

struct SimOutcome {
  bool halted = false;
  int64_t steps = 0;
  // Valid when halted. sigma counts non-zero cells on the final tape, where
  // the halting step performs the classical write of a 1 (the historical
  // `1RZ` behaviour); the published Sigma values count that write.
  int64_t sigma = 0;
  int64_t space = 0;
  int halt_state = 0;   // state of the undefined transition reached
  int halt_symbol = 0;  // symbol read at the halting step
};

SimOutcome simulate(const TransitionTable& tm, int64_t max_steps);

// Same, reusing a caller-owned configuration (reset internally). Avoids
// re-allocating tapes in enumeration loops.
SimOutcome simulate(const TransitionTable& tm, int64_t max_steps,
                    Configuration& scratch);

// Sigma of a configuration frozen at its halting step (see SimOutcome).
int64_t halted_sigma(const Configuration& cfg);

}  // namespace bb
