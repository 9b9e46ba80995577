#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bb/machine.hpp"
#include "bb/simulate.hpp"

namespace bb {

// A configuration serialized as tape symbols with the state letter inserted
// before the head cell: `000A00110` etc. Only finite-support configurations
// are representable; representations of the same configuration differ only
// in leading/trailing zeros.
std::string word_representation(const Configuration& cfg);

// Split form used by the weighted verifiers: word left of the head, state,
// symbol under the head, word right of the head.
struct SplitWord {
  std::string left;
  int state = 0;
  uint8_t mid = 0;
  std::string right;
};

SplitWord split_word(const Configuration& cfg);

// Parses a word-representation (characters '0'-'5' and one state letter)
// back into a configuration with the head at the letter's position.
// Throws std::invalid_argument when no or several state letters are present.
Configuration configuration_from_word(const std::string& word, int n_states,
                                      int n_symbols);

}  // namespace bb
