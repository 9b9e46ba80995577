#include "bb/spacetime.hpp"

#include <stdexcept>
#include <vector>

#include "bb/simulate.hpp"

namespace bb {

const std::array<Rgb, kMaxStates> kStateColors = {{
    {255, 0, 0},      // A red
    {255, 128, 0},    // B orange
    {0, 0, 255},      // C blue
    {0, 160, 0},      // D green
    {255, 0, 255},    // E magenta
    {0, 200, 200},    // F teal
    {128, 0, 160},    // G purple
    {150, 150, 0},    // H olive
}};

std::string render_spacetime(const TransitionTable& tm,
                             const DiagramSpec& spec) {
  if (spec.width < 1) throw std::invalid_argument("diagram width must be >= 1");
  if (spec.steps < 0) throw std::invalid_argument("steps must be >= 0");

  // Window: tape positions [first, first + width).
  int64_t first = spec.offset - spec.width / 2;
  int levels = tm.n_symbols() - 1;

  Configuration cfg;
  cfg.reset();
  std::vector<std::string> rows;
  size_t pixel = spec.colored ? 3 : 1;
  for (int64_t i = 0; i <= spec.steps; ++i) {
    std::string row(static_cast<size_t>(spec.width) * pixel, '\0');
    for (int x = 0; x < spec.width; ++x) {
      int64_t pos = first + x;
      uint8_t sym = cfg.cell(pos);
      uint8_t grey =
          static_cast<uint8_t>(levels ? (255 * sym + levels / 2) / levels : 0);
      if (!spec.colored) {
        row[static_cast<size_t>(x)] = static_cast<char>(grey);
      } else if (pos == cfg.head()) {
        const Rgb& c = kStateColors[static_cast<size_t>(cfg.state())];
        row[3 * static_cast<size_t>(x) + 0] = static_cast<char>(c.r);
        row[3 * static_cast<size_t>(x) + 1] = static_cast<char>(c.g);
        row[3 * static_cast<size_t>(x) + 2] = static_cast<char>(c.b);
      } else {
        row[3 * static_cast<size_t>(x) + 0] = static_cast<char>(grey);
        row[3 * static_cast<size_t>(x) + 1] = static_cast<char>(grey);
        row[3 * static_cast<size_t>(x) + 2] = static_cast<char>(grey);
      }
    }
    rows.push_back(std::move(row));
    if (i == spec.steps) break;
    if (!cfg.step_applied(tm)) break;  // halted: remaining rows truncated
  }

  std::string out = spec.colored ? "P6\n" : "P5\n";
  out += std::to_string(spec.width) + " " + std::to_string(rows.size()) +
         "\n255\n";
  for (const std::string& row : rows) out += row;
  return out;
}

}  // namespace bb
