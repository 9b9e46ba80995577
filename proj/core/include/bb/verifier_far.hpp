#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bb/machine.hpp"

namespace bb {

// Square matrix over the Boolean semiring ({0,1}, OR, AND), one bitmask row
// per state. All desk-scale certificates fit in 64 states.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(int n) : n_(n), rows_(static_cast<size_t>(n), 0) {}

  static BoolMatrix identity(int n);

  int size() const { return n_; }
  uint64_t row(int i) const { return rows_[static_cast<size_t>(i)]; }
  bool get(int i, int j) const { return (row(i) >> j) & 1u; }
  void set(int i, int j) { rows_[static_cast<size_t>(i)] |= uint64_t{1} << j; }
  void set_row(int i, uint64_t bits) { rows_[static_cast<size_t>(i)] = bits; }

  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  bool operator==(const BoolMatrix&) const = default;

  // Elementwise <=: every 1 of *this is a 1 of other.
  bool subsumed_by(const BoolMatrix& other) const;

 private:
  int n_ = 0;
  std::vector<uint64_t> rows_;
};

// Row-vector (1xn over the semiring) times matrix.
uint64_t mul_row(uint64_t v, const BoolMatrix& m);

// NFA over word-representations: tape symbols and machine-state letters are
// both alphabet symbols. q0/accept/steady are 1xn bit rows.
struct NfaCertificate {
  int n = 0;
  int tm_states = 0;
  int tm_symbols = 2;
  uint64_t q0 = 0;
  uint64_t accept = 0;
  uint64_t steady = 0;
  std::vector<BoolMatrix> t_symbol;  // one per tape symbol
  std::vector<BoolMatrix> t_state;   // one per machine state

  std::string to_json() const;
  static NfaCertificate from_json(const std::string& text);
  static NfaCertificate load(const std::string& path);

  bool accepts_word(const std::string& word) const;
};

enum class FarCondition : uint8_t {
  None,
  Dimensions,
  LeadingZeros,        // q0 T0 = q0
  TrailingZeros,       // T0 a^T = a^T
  SteadyAccepted,      // s a^T = 1
  SteadyState,         // s T_b >= s for every tape symbol
  Halting,             // q0 T_u T_f T_r >= s for undefined (f,r)
  LeftTransition,      // T_b T_f T_r >= T_t T_b T_w
  RightTransition,     // T_f T_r >= T_w T_t
  InitialRejected,     // q0 T_A a^T = 0
};

const char* far_condition_name(FarCondition c);

struct FarOutcome {
  bool verified = false;
  FarCondition failed = FarCondition::None;
};

// Checks every condition of the nonhalting certificate; the quantified
// halting condition is checked over the finite closure of {q0} under the
// tape-symbol matrices.
FarOutcome check_far(const TransitionTable& tm, const NfaCertificate& cert);

// Least set of row vectors containing q0 and closed under right
// multiplication by every tape-symbol matrix.
std::vector<uint64_t> reachable_rows(const NfaCertificate& cert);

// Total DFA over the tape alphabet; state 0 is initial.
struct Dfa {
  int n = 0;
  int n_symbols = 2;
  std::vector<std::array<int, kMaxSymbols>> delta;

  // Restriction to the states reachable from 0 (renamed in discovery order).
  Dfa trimmed() const;
};

// Builds the certificate NFA from a precursor DFA: DFA states read the part
// of the word left of the state letter, pair states (dfa state, machine
// state) read the rest, and a single sink absorbs everything after a halting
// read. The output must be validated with check_far by the caller; the
// construction itself is not trusted. Throws on malformed DFAs.
NfaCertificate dfa_to_nfa(const TransitionTable& tm, const Dfa& dfa);

// Brute-force search over canonical DFAs with at most max_dfa_states states;
// returns the first certificate (in enumeration order) that check_far
// verifies, trying at most `budget` DFAs.
std::optional<NfaCertificate> search_far(const TransitionTable& tm,
                                         int max_dfa_states, int64_t budget);

}  // namespace bb
