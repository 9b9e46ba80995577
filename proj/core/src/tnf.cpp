#include "bb/tnf.hpp"

#include <array>

#include "bb/simulate.hpp"

namespace bb {

namespace {

struct VisitOrder {
  std::array<int, kMaxStates> rename{};  // old state -> new state
  bool first_move_left = false;
  bool halted = false;
  uint64_t reached_slots = 0;  // bit q*n_symbols+s for every attempted slot
};

// Runs the machine from `start_state` on the all-0 tape, recording the order
// in which states are first visited and which table slots are attempted.
// States never visited keep their relative order after the visited ones.
VisitOrder visit_order(const TransitionTable& tm, int start_state,
                       int64_t budget, bool stop_when_all_seen) {
  VisitOrder out;
  std::array<bool, kMaxStates> seen{};
  int next_name = 0;
  auto visit = [&](int q) {
    if (!seen[q]) {
      seen[q] = true;
      out.rename[q] = next_name++;
    }
  };

  Configuration cfg;
  cfg.reset();
  cfg.set_state(start_state);
  visit(start_state);
  for (int64_t i = 0; i < budget; ++i) {
    int q = cfg.state();
    uint8_t sym = cfg.read();
    out.reached_slots |= uint64_t{1} << (q * tm.n_symbols() + sym);
    if (!tm.is_defined(q, sym)) {
      out.halted = true;
      break;
    }
    if (i == 0) out.first_move_left = tm.at(q, sym).dir == Dir::Left;
    cfg.step_applied(tm);
    visit(cfg.state());
    if (stop_when_all_seen && next_name == tm.n_states()) break;
  }
  for (int q = 0; q < tm.n_states(); ++q)
    if (!seen[q]) out.rename[q] = next_name++;
  return out;
}

TransitionTable rebuild(const TransitionTable& tm, const VisitOrder& vo,
                        bool clear_unreached) {
  TransitionTable out(tm.n_states(), tm.n_symbols());
  for (int q = 0; q < tm.n_states(); ++q)
    for (int s = 0; s < tm.n_symbols(); ++s) {
      if (!tm.is_defined(q, s)) continue;
      bool reached = (vo.reached_slots >> (q * tm.n_symbols() + s)) & 1u;
      if (clear_unreached && !reached) continue;
      Transition t = tm.at(q, s);
      if (vo.first_move_left) t.dir = flipped(t.dir);
      t.next = static_cast<uint8_t>(vo.rename[t.next]);
      out.define(vo.rename[q], s, t);
    }
  return out;
}

}  // namespace

TnfResult tnf_normalize(const TransitionTable& tm, int64_t step_budget) {
  VisitOrder vo = visit_order(tm, 0, step_budget, /*stop_when_all_seen=*/false);
  return TnfResult{rebuild(tm, vo, vo.halted), vo.halted};
}

std::optional<TransitionTable> tm_to_1rb(const TransitionTable& tm,
                                         int64_t rename_budget) {
  if (!tm.is_defined(0, 0) || tm.at(0, 0).write != 0) return std::nullopt;

  // Walk the 0-reading path; the tape stays all zero until a non-zero write.
  std::array<bool, kMaxStates> on_path{};
  int q = 0;
  while (true) {
    if (!tm.is_defined(q, 0)) return std::nullopt;
    if (tm.at(q, 0).write != 0) break;
    if (on_path[q]) return std::nullopt;  // pure 0-writing cycle
    on_path[q] = true;
    q = tm.at(q, 0).next;
  }

  VisitOrder vo = visit_order(tm, q, rename_budget, /*stop_when_all_seen=*/true);
  vo.first_move_left = tm.at(q, 0).dir == Dir::Left;
  vo.reached_slots = 0;  // keep every transition; only names/directions change
  return rebuild(tm, vo, false);
}

}  // namespace bb
