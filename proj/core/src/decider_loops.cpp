#include "bb/decider_loops.hpp"

#include "bb/simulate.hpp"

namespace bb {

std::string Transcript::prefix_text(size_t count) const {
  std::string out;
  for (size_t i = 0; i < count && i < entries.size(); ++i) {
    if (i) out.push_back(' ');
    out.push_back(static_cast<char>('A' + entries[i].state));
    out.push_back(static_cast<char>('0' + entries[i].read));
  }
  return out;
}

Transcript record_transcript(const TransitionTable& tm, int64_t limit) {
  Transcript tr;
  tr.entries.reserve(static_cast<size_t>(limit) + 1);

  thread_local Configuration cfg;
  cfg.reset();
  int64_t running_max = 0;
  int64_t running_min = 0;
  for (int64_t i = 0; i <= limit; ++i) {
    TranscriptEntry e;
    e.state = static_cast<uint8_t>(cfg.state());
    e.read = cfg.read();
    e.pos = cfg.head();
    if (e.pos > running_max) running_max = e.pos;
    if (e.pos < running_min) running_min = e.pos;
    e.at_max = e.pos == running_max;
    e.at_min = e.pos == running_min;
    tr.entries.push_back(e);
    if (i == limit) break;
    if (!cfg.step_applied(tm)) {
      tr.halted = true;
      tr.halt = HaltStats{.steps = cfg.steps(),
                          .sigma = halted_sigma(cfg),
                          .space = cfg.space(),
                          .halt_state = e.state,
                          .halt_symbol = e.read};
      break;
    }
  }
  return tr;
}

LoopsResult decide_loops(const Transcript& tr) {
  if (tr.halted)
    return LoopsResult{Status::Halt, LoopKind::None, tr.halt};

  const auto& T = tr.entries;
  int64_t last = static_cast<int64_t>(T.size()) - 1;  // index L
  for (int64_t l = 1; l <= last / 2; ++l) {
    int64_t K = last - l;
    // Walk the two windows backwards while the state-symbol pairs agree;
    // from depth l-1 on, every matched depth is a candidate repetition start.
    for (int64_t i = 0; K - i >= 0; ++i) {
      const TranscriptEntry& a = T[static_cast<size_t>(last - i)];
      const TranscriptEntry& b = T[static_cast<size_t>(K - i)];
      if (a.state != b.state || a.read != b.read) break;
      if (i < l - 1) continue;
      if (a.pos == b.pos)
        return LoopsResult{Status::Nonhalt, LoopKind::Cycler, {}};
      if ((a.at_max && b.at_max) || (a.at_min && b.at_min))
        return LoopsResult{Status::Nonhalt, LoopKind::TranslatedCycler, {}};
    }
  }
  return LoopsResult{Status::Unknown, LoopKind::None, {}};
}

LoopsResult decide_loops(const TransitionTable& tm, int64_t limit) {
  return decide_loops(record_transcript(tm, limit));
}

std::string loops_decider_id(int64_t limit) {
  return "LOOP1_params_" + std::to_string(limit);
}

}  // namespace bb
