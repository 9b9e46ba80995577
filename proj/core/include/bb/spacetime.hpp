#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bb/machine.hpp"

namespace bb {

struct DiagramSpec {
  int64_t steps = 45;  // row count is steps+1 unless the machine halts first
  int width = 400;     // tape cells shown
  int64_t offset = 0;  // shift of the window; 0 centers the initial cell
  bool colored = false;  // head/state coloring (PPM) vs grayscale (PGM)
};

struct Rgb {
  uint8_t r, g, b;
};

// Head colors per state, documented in the README.
extern const std::array<Rgb, kMaxStates> kStateColors;

// Row i is the tape after i steps; symbol 0 renders black, symbol s-1 white,
// linear grey levels in between. Colored output marks the head cell with the
// state color. Binary PGM (P5) when uncolored, PPM (P6) when colored.
// Rendering stops early when the machine halts, truncating rows.
std::string render_spacetime(const TransitionTable& tm,
                             const DiagramSpec& spec);

}  // namespace bb
