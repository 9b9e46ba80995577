#include "bb/word_rep.hpp"

#include <algorithm>
#include <stdexcept>

namespace bb {

namespace {

// Smallest window covering the head and every non-zero cell.
std::pair<int64_t, int64_t> support_window(const Configuration& cfg) {
  int64_t lo = cfg.head(), hi = cfg.head();
  for (int64_t p = cfg.min_pos(); p <= cfg.max_pos(); ++p)
    if (cfg.cell(p) != 0) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  return {lo, hi};
}

}  // namespace

std::string word_representation(const Configuration& cfg) {
  auto [lo, hi] = support_window(cfg);
  std::string out;
  out.reserve(static_cast<size_t>(hi - lo + 2));
  for (int64_t p = lo; p <= hi; ++p) {
    if (p == cfg.head()) out.push_back(static_cast<char>('A' + cfg.state()));
    out.push_back(static_cast<char>('0' + cfg.cell(p)));
  }
  return out;
}

SplitWord split_word(const Configuration& cfg) {
  auto [lo, hi] = support_window(cfg);
  SplitWord out;
  out.state = cfg.state();
  out.mid = cfg.read();
  for (int64_t p = lo; p < cfg.head(); ++p)
    out.left.push_back(static_cast<char>('0' + cfg.cell(p)));
  for (int64_t p = cfg.head() + 1; p <= hi; ++p)
    out.right.push_back(static_cast<char>('0' + cfg.cell(p)));
  return out;
}

Configuration configuration_from_word(const std::string& word, int n_states,
                                      int n_symbols) {
  Configuration cfg;
  cfg.reset();
  int64_t pos = 0;
  int64_t head = -1;
  for (char c : word) {
    if (c >= '0' && c < '0' + n_symbols) {
      cfg.poke(pos, static_cast<uint8_t>(c - '0'));
      ++pos;
    } else if (c >= 'A' && c < 'A' + n_states) {
      if (head >= 0) throw std::invalid_argument("two state letters in word");
      head = pos;
      cfg.set_state(c - 'A');
    } else {
      throw std::invalid_argument("bad character in word-representation");
    }
  }
  if (head < 0) throw std::invalid_argument("no state letter in word");
  cfg.set_head(head);
  return cfg;
}

}  // namespace bb
