#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace bb {

// Compile-level bounds on machine dimensions. 8 states x 6 symbols covers
// every table size this project enumerates or verifies.
inline constexpr int kMaxStates = 8;
inline constexpr int kMaxSymbols = 6;
inline constexpr int kMaxSlots = kMaxStates * kMaxSymbols;

enum class Dir : int8_t { Left = -1, Right = 1 };

inline Dir flipped(Dir d) { return d == Dir::Left ? Dir::Right : Dir::Left; }

struct Transition {
  uint8_t write = 0;
  Dir dir = Dir::Right;
  uint8_t next = 0;

  bool operator==(const Transition&) const = default;
};

// Partial transition table of an n-state, s-symbol machine. Undefined slots
// halt the machine when reached.
class TransitionTable {
 public:
  TransitionTable() = default;
  TransitionTable(int n_states, int n_symbols);

  int n_states() const { return n_states_; }
  int n_symbols() const { return n_symbols_; }

  bool is_defined(int state, int symbol) const {
    return (defined_ >> slot(state, symbol)) & 1u;
  }
  const Transition& at(int state, int symbol) const {
    return slots_[slot(state, symbol)];
  }
  std::optional<Transition> transition(int state, int symbol) const;

  void define(int state, int symbol, Transition t);
  void clear(int state, int symbol);

  int defined_count() const;
  bool totally_defined() const;

  // All moves swapped L<->R.
  TransitionTable mirrored() const;
  // States renamed via perm (old index -> new index); perm[0] need not be 0.
  TransitionTable with_state_permutation(std::span<const int> perm) const;
  // Non-zero symbols renamed via perm (old symbol -> new symbol, perm[0]==0).
  TransitionTable with_symbol_permutation(std::span<const int> perm) const;

  bool operator==(const TransitionTable&) const = default;

 private:
  int slot(int state, int symbol) const { return state * n_symbols_ + symbol; }

  int n_states_ = 1;
  int n_symbols_ = 2;
  uint64_t defined_ = 0;
  std::array<Transition, kMaxSlots> slots_{};
};

// Parses the underscore-separated text format. Triples are `---` (undefined)
// or `<digit><L|R><letter>`; a letter outside A..(state n) is the historical
// halting convention (`1RZ`) and parses as an undefined slot.
// Throws std::invalid_argument on malformed input.
TransitionTable parse_machine(std::string_view text);

// Canonical text; undefined slots always emit `---`.
std::string emit_machine(const TransitionTable& tm);

}  // namespace bb
