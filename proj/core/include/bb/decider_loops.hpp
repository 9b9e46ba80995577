#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bb/machine.hpp"
#include "bb/record.hpp"

namespace bb {

// One transcript entry: the (state, read-symbol, head-position) triple
// observed before each step, plus whether that position is the running
// maximum/minimum of all head positions up to and including it.
struct TranscriptEntry {
  uint8_t state = 0;
  uint8_t read = 0;
  int64_t pos = 0;
  bool at_max = false;
  bool at_min = false;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  bool halted = false;
  HaltStats halt;  // valid when halted

  std::string prefix_text(size_t count) const;  // "A0 B0 C0 ..."
};

// Simulates up to `limit` steps, recording entries T_0..T_limit (fewer when
// the machine halts first).
Transcript record_transcript(const TransitionTable& tm, int64_t limit);

enum class LoopKind : uint8_t { None, Cycler, TranslatedCycler };

struct LoopsResult {
  Status status = Status::Unknown;
  LoopKind kind = LoopKind::None;
  HaltStats halt;  // valid when status == Halt
};

// Cycler / Translated Cycler detection from the transcript: searches for two
// back-to-back transcript repetitions of some length l <= limit/2, rewinding
// the matched window until the repetition starts either share a head position
// (Cycler) or both sit at the same-side tape extremum (Translated Cycler).
LoopsResult decide_loops(const TransitionTable& tm, int64_t limit);

// Same test run over an already-recorded transcript.
LoopsResult decide_loops(const Transcript& transcript);

std::string loops_decider_id(int64_t limit);  // LOOP1_params_<L>

}  // namespace bb
