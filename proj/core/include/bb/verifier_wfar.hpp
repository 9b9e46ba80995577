#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bb/machine.hpp"
#include "bb/word_rep.hpp"

namespace bb {

// Extended integer interval [lo, hi] with infinities at either end.
struct WeightInterval {
  bool lo_inf = false;  // lo = -infinity
  bool hi_inf = false;  // hi = +infinity
  int64_t lo = 0;
  int64_t hi = 0;

  bool contains(int64_t w) const {
    return (lo_inf || w >= lo) && (hi_inf || w <= hi);
  }
  bool empty() const { return !lo_inf && !hi_inf && lo > hi; }
  bool operator==(const WeightInterval&) const = default;

  static WeightInterval everything() { return {true, true, 0, 0}; }
  static WeightInterval exactly(int64_t w) { return {false, false, w, w}; }

  WeightInterval shifted(int64_t delta) const;
  WeightInterval joined(const WeightInterval& other) const;
  WeightInterval clamped(const WeightInterval& window) const;
};

// Deterministic weighted automaton over the tape alphabet; state 0 initial.
struct WeightedAutomaton {
  int n = 0;
  int n_symbols = 2;
  std::vector<std::array<int, kMaxSymbols>> delta;
  std::vector<std::array<int64_t, kMaxSymbols>> weight;

  struct RunResult {
    int state = 0;
    int64_t weight = 0;
  };
  // Processes `word` front-to-back (reversed=false) or back-to-front.
  RunResult run(const std::string& word, bool reversed) const;
};

struct StateBounds {
  bool reachable = false;
  WeightInterval feasible;  // achievable path weights into the state
};

// Min path weight via Bellman-Ford (-inf on a reachable negative cycle into
// the state); max symmetrically on negated weights.
std::vector<StateBounds> feasible_bounds(const WeightedAutomaton& wa);

struct WfarCertificate {
  WeightedAutomaton left;
  WeightedAutomaton right;
  int64_t widen = 1;  // P: bounds crossing +/-P widen to the infinities

  std::string to_json() const;
  static WfarCertificate from_json(const std::string& text);
  static WfarCertificate load(const std::string& path);
};

// (left WA state, machine state, middle symbol, right WA state).
struct ConfigClassKey {
  uint8_t left_state = 0;
  uint8_t machine_state = 0;
  uint8_t middle = 0;
  uint8_t right_state = 0;

  auto operator<=>(const ConfigClassKey&) const = default;
};

struct ClosureOptions {
  bool feasibility_pruning = true;
  int64_t max_work_items = 1'000'000;
};

struct ClosureResult {
  bool halt_reached = false;
  bool budget_exceeded = false;
  ConfigClassKey halting_key;  // valid when halt_reached
  std::map<ConfigClassKey, WeightInterval> classes;
};

// Weighted forward closure from [p0] A0 [q0]; W=0, with interval join on key
// collision, widening at the cutoff, and feasibility pruning.
ClosureResult close_accept_set(const TransitionTable& tm,
                               const WfarCertificate& cert,
                               const ClosureOptions& opts = {});

enum class WfarFailure : uint8_t {
  None,
  ZeroConditions,        // point 1: blank reads must self-loop with weight 0
  HaltingConfiguration,  // a halting class survives closure
  ClosureBudget,         // fixpoint did not stabilize within the work limit
};

const char* wfar_failure_name(WfarFailure f);

struct WfarOutcome {
  bool verified = false;
  WfarFailure failure = WfarFailure::None;
  ClosureResult closure;
};

WfarOutcome check_wfar(const TransitionTable& tm, const WfarCertificate& cert);

// Runs both automata over the split word and tests membership of the
// resulting weighted configuration in the closed accept set.
bool accepts_configuration(const WfarCertificate& cert,
                           const ClosureResult& closure, const SplitWord& w);
bool accepts_configuration(const WfarCertificate& cert,
                           const ClosureResult& closure,
                           const Configuration& cfg);

}  // namespace bb
