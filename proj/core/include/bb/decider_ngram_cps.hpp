#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bb/machine.hpp"
#include "bb/record.hpp"

namespace bb {

enum class NgramVariant : uint8_t { Plain, FixedHistory, Lru };

struct NgramParams {
  NgramVariant variant = NgramVariant::Plain;
  int history_len = 0;  // fixed-history length h; ignored otherwise
  int left_len = 2;     // left n-gram length
  int right_len = 2;    // right n-gram length
  int max_configs = 1000;
};

// Tape symbols of the augmented machine: a base symbol plus a history payload
// of (state, base-symbol) pairs. Symbols are interned to dense ids; id 0 is
// always the zero symbol "0, []". History entries are packed as
// state * n_symbols + base, most recent first.
class AugmentedAlphabet {
 public:
  AugmentedAlphabet(NgramVariant variant, int history_len, int n_states,
                    int n_symbols);

  uint32_t zero_id() const { return 0; }
  int size() const { return static_cast<int>(entries_.size()); }

  uint8_t base(uint32_t id) const { return entries_[id].base; }
  const std::vector<uint8_t>& history(uint32_t id) const {
    return entries_[id].history;
  }

  // Symbol written when the machine in `state` reads symbol `id` and the
  // underlying transition writes `write_base`.
  uint32_t on_write(uint32_t id, int state, uint8_t write_base);

  uint32_t intern(uint8_t base, std::vector<uint8_t> history);

 private:
  struct Entry {
    uint8_t base;
    std::vector<uint8_t> history;
  };
  NgramVariant variant_;
  int history_len_;
  int n_symbols_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, uint32_t> index_;
};

// A local configuration: the n-grams adjacent to the head on each side, the
// machine state and the symbol under the head, all over interned symbols.
struct LocalConfiguration {
  std::vector<uint32_t> left;   // left[0] farthest, left.back() next to head
  std::vector<uint32_t> right;  // right[0] next to head, right.back() farthest
  uint8_t state = 0;
  uint32_t middle = 0;

  bool operator==(const LocalConfiguration&) const = default;
};

struct LocalConfigurationHash {
  size_t operator()(const LocalConfiguration& c) const;
};

using LocalConfigSet =
    std::unordered_set<LocalConfiguration, LocalConfigurationHash>;

struct NgramResult {
  Status status = Status::Unknown;
  // Populated on Nonhalt so callers can re-check closure and run probes.
  LocalConfigSet configs;
  std::vector<std::vector<uint32_t>> left_grams;
  std::vector<std::vector<uint32_t>> right_grams;
  std::unique_ptr<AugmentedAlphabet> alphabet;
};

// n-gram Closed Position Set: saturates the set of local configurations
// reachable from the all-zero one. NONHALT when the set closes with no
// undefined transition reachable; UNKNOWN when an undefined transition is
// met or the set grows past max_configs.
NgramResult decide_ngram_cps(const TransitionTable& tm,
                             const NgramParams& params);

std::string ngram_decider_id(const NgramParams& params);

// Successor configurations for a right-moving step (write, next) given the
// set of seen right n-grams; mirrors Algorithm 2's update rule. Exposed for
// tests of the worked update.
std::vector<LocalConfiguration> right_move_successors(
    const LocalConfiguration& c, uint32_t write_id, uint8_t next_state,
    const std::vector<std::vector<uint32_t>>& right_grams);
std::vector<LocalConfiguration> left_move_successors(
    const LocalConfiguration& c, uint32_t write_id, uint8_t next_state,
    const std::vector<std::vector<uint32_t>>& left_grams);

// Concrete simulation of the augmented machine; calls `visit` with the local
// configuration (windows zero-extended) observed before each step. Stops at
// `max_steps` or when an undefined transition is reached. Returns steps run.
int64_t simulate_augmented(
    const TransitionTable& tm, AugmentedAlphabet& alphabet, int left_len,
    int right_len, int64_t max_steps,
    const std::function<void(const LocalConfiguration&)>& visit);

}  // namespace bb
