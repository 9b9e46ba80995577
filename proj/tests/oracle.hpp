// Test-only reference implementations, kept deliberately independent of the
// library's simulation path: a map-based tape and straight-line stepping.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bb/machine.hpp"

namespace oracle {

struct Result {
  bool halted = false;
  int64_t steps = 0;
  int64_t ones = 0;       // non-zero cells on the final tape, halting write included
  int64_t cells = 0;      // distinct head positions visited
  int halt_state = 0;
  int halt_symbol = 0;
  std::vector<std::pair<int, int64_t>> trace;  // (state, head) per time step
};

inline Result run(const bb::TransitionTable& tm, int64_t max_steps,
                  bool keep_trace = false) {
  std::map<int64_t, int> tape;
  int64_t head = 0;
  int state = 0;
  int64_t lo = 0, hi = 0;
  Result res;
  for (int64_t i = 0; i < max_steps; ++i) {
    if (keep_trace) res.trace.emplace_back(state, head);
    int sym = tape.count(head) ? tape[head] : 0;
    auto t = tm.transition(state, sym);
    if (!t) {
      res.halted = true;
      res.steps = i + 1;
      res.halt_state = state;
      res.halt_symbol = sym;
      tape[head] = sym == 0 ? 1 : sym;  // the halting step writes a 1
      for (auto& [pos, s] : tape)
        if (s != 0) ++res.ones;
      res.cells = hi - lo + 1;
      return res;
    }
    tape[head] = t->write;
    head += t->dir == bb::Dir::Left ? -1 : 1;
    if (head < lo) lo = head;
    if (head > hi) hi = head;
    state = t->next;
  }
  if (keep_trace) res.trace.emplace_back(state, head);
  res.steps = max_steps;
  return res;
}

// Uniform random table; each slot undefined with probability undef_pct/100.
inline bb::TransitionTable random_table(std::mt19937& rng, int n_states,
                                        int n_symbols, int undef_pct) {
  bb::TransitionTable tm(n_states, n_symbols);
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<int> sym(0, n_symbols - 1);
  std::uniform_int_distribution<int> st(0, n_states - 1);
  std::uniform_int_distribution<int> d(0, 1);
  for (int q = 0; q < n_states; ++q)
    for (int s = 0; s < n_symbols; ++s) {
      if (pct(rng) < undef_pct) continue;
      tm.define(q, s,
                bb::Transition{static_cast<uint8_t>(sym(rng)),
                               d(rng) ? bb::Dir::Left : bb::Dir::Right,
                               static_cast<uint8_t>(st(rng))});
    }
  return tm;
}

}  // namespace oracle
