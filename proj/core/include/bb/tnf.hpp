#pragma once

#include <optional>

#include "bb/machine.hpp"

namespace bb {

struct TnfResult {
  TransitionTable table;
  // True when the machine halted within the budget: the first-visit renaming
  // is final and unreached transitions were cleared. False means best-effort
  // renaming of the visited prefix with no clearing.
  bool complete = false;
};

// Renames states by first-visit order from the all-0 tape, mirrors every move
// when the first executed move is L, and clears transitions proven
// unreachable by a halting run within the budget.
TnfResult tnf_normalize(const TransitionTable& tm, int64_t step_budget);

// Re-roots a machine whose initial transition writes 0 at the first state on
// the 0-reading path that writes a non-zero symbol, then normalizes names and
// directions. The result visits the same configurations as the input, up to
// renaming, once past the 0-writing prefix. Returns nothing when the input
// does not start by writing 0, when the 0-path cycles without writing, or
// when it runs into a halt.
std::optional<TransitionTable> tm_to_1rb(const TransitionTable& tm,
                                         int64_t rename_budget = 1 << 20);

}  // namespace bb
