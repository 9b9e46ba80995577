#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bb {

enum class Status : uint8_t { Halt, Nonhalt, Unknown, AssumedNonhalt };

const char* status_name(Status s);

struct HaltStats {
  int64_t steps = 0;
  int64_t sigma = 0;
  int64_t space = 0;
  int halt_state = 0;
  int halt_symbol = 0;
};

// One output row per enumerated machine.
struct MachineRecord {
  std::string machine;
  Status status = Status::Unknown;
  std::string decider_id;
  std::optional<HaltStats> halt;
  int stage_index = -1;  // pipeline stage that decided; not serialized

  // `<machine>,<status>,<decider>[,steps,sigma,space]`
  std::string to_line() const;
};

// Verdict of a single decider/pipeline run on one machine.
struct DecideOutcome {
  Status status = Status::Unknown;
  int stage_index = -1;  // which pipeline stage decided, -1 for none
  std::string decider_id;
  std::optional<HaltStats> halt;
};

}  // namespace bb
