#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bb/simulate.hpp"
#include "bb/spacetime.hpp"

using namespace bb;

namespace {

struct Image {
  std::string magic;
  int width = 0;
  int height = 0;
  std::string pixels;
};

Image decode(const std::string& bytes) {
  Image img;
  size_t pos = bytes.find('\n');
  img.magic = bytes.substr(0, pos);
  size_t pos2 = bytes.find('\n', pos + 1);
  std::string dims = bytes.substr(pos + 1, pos2 - pos - 1);
  sscanf(dims.c_str(), "%d %d", &img.width, &img.height);
  size_t pos3 = bytes.find('\n', pos2 + 1);
  img.pixels = bytes.substr(pos3 + 1);
  return img;
}

}  // namespace

TEST_CASE("colored 45-step diagram of the 5-state winner") {
  TransitionTable tm = parse_machine("1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA");
  Image img = decode(render_spacetime(tm, {45, 64, 0, true}));
  CHECK(img.magic == "P6");
  CHECK(img.width == 64);
  CHECK(img.height == 46);
  REQUIRE(img.pixels.size() == 64u * 46u * 3u);
  // Row 0: head at the origin (column 32) in the state-A color.
  const Rgb& a = kStateColors[0];
  size_t at = (0 * 64 + 32) * 3;
  CHECK(static_cast<uint8_t>(img.pixels[at]) == a.r);
  CHECK(static_cast<uint8_t>(img.pixels[at + 1]) == a.g);
  CHECK(static_cast<uint8_t>(img.pixels[at + 2]) == a.b);
}

TEST_CASE("rows are pixel-exact against the simulator") {
  TransitionTable tm = parse_machine("1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA");
  const int width = 32;
  Image img = decode(render_spacetime(tm, {30, width, 0, false}));
  CHECK(img.magic == "P5");
  REQUIRE(img.height == 31);

  Configuration cfg;
  for (int row = 0; row <= 30; ++row) {
    for (int x = 0; x < width; ++x) {
      int64_t pos = x - width / 2;
      uint8_t expect = cfg.cell(pos) ? 255 : 0;
      CHECK(static_cast<uint8_t>(img.pixels[static_cast<size_t>(row * width + x)]) ==
            expect);
    }
    if (row < 30) REQUIRE(cfg.step_applied(tm));
  }
}

TEST_CASE("halting truncates the rows") {
  TransitionTable tm = parse_machine("1RB1LB_1LA---");  // halts at step 6
  Image img = decode(render_spacetime(tm, {45, 16, 0, false}));
  CHECK(img.height == 6);  // configurations exist after 0..5 steps
}

TEST_CASE("grey levels are linear for multi-symbol machines") {
  TransitionTable tm = parse_machine("1RB2LA1RA1RA_1LB1LA3RB---");
  Configuration cfg;
  for (int i = 0; i < 200; ++i) cfg.step_applied(tm);
  Image img = decode(render_spacetime(tm, {200, 64, 0, false}));
  // Symbols 0..3 map to 0, 85, 170, 255.
  for (int x = 0; x < 64; ++x) {
    uint8_t sym = cfg.cell(x - 32);
    uint8_t grey = static_cast<uint8_t>((255 * sym + 1) / 3);
    CHECK(static_cast<uint8_t>(
              img.pixels[static_cast<size_t>(200 * 64 + x)]) == grey);
  }
}

TEST_CASE("mirrored machines render mirrored images") {
  TransitionTable tm = parse_machine("1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA");
  const int width = 33;  // odd width: column 16 is the origin
  Image a = decode(render_spacetime(tm, {40, width, 0, false}));
  Image b = decode(render_spacetime(tm.mirrored(), {40, width, 0, false}));
  REQUIRE(a.height == b.height);
  for (int row = 0; row < a.height; ++row)
    for (int x = 0; x < width; ++x)
      CHECK(a.pixels[static_cast<size_t>(row * width + x)] ==
            b.pixels[static_cast<size_t>(row * width + (width - 1 - x))]);
}

TEST_CASE("zero width is rejected") {
  TransitionTable tm = parse_machine("1RB1LB_1LA---");
  CHECK_THROWS_AS(render_spacetime(tm, {10, 0, 0, false}),
                  std::invalid_argument);
}

TEST_CASE("offset shifts the window") {
  TransitionTable tm = parse_machine("1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA");
  Image base = decode(render_spacetime(tm, {20, 16, 0, false}));
  Image moved = decode(render_spacetime(tm, {20, 16, 3, false}));
  bool any_diff = false;
  for (size_t i = 0; i < base.pixels.size(); ++i)
    any_diff |= base.pixels[i] != moved.pixels[i];
  CHECK(any_diff);
}
