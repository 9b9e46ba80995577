#include "bb/machine.hpp"

#include <stdexcept>

namespace bb {

TransitionTable::TransitionTable(int n_states, int n_symbols)
    : n_states_(n_states), n_symbols_(n_symbols) {
  if (n_states < 1 || n_states > kMaxStates)
    throw std::invalid_argument("state count out of range");
  if (n_symbols < 2 || n_symbols > kMaxSymbols)
    throw std::invalid_argument("symbol count out of range");
}

std::optional<Transition> TransitionTable::transition(int state,
                                                      int symbol) const {
  if (!is_defined(state, symbol)) return std::nullopt;
  return slots_[slot(state, symbol)];
}

void TransitionTable::define(int state, int symbol, Transition t) {
  if (t.write >= n_symbols_ || t.next >= n_states_)
    throw std::invalid_argument("transition target out of range");
  slots_[slot(state, symbol)] = t;
  defined_ |= uint64_t{1} << slot(state, symbol);
}

void TransitionTable::clear(int state, int symbol) {
  slots_[slot(state, symbol)] = Transition{};
  defined_ &= ~(uint64_t{1} << slot(state, symbol));
}

int TransitionTable::defined_count() const {
  return __builtin_popcountll(defined_);
}

bool TransitionTable::totally_defined() const {
  return defined_count() == n_states_ * n_symbols_;
}

TransitionTable TransitionTable::mirrored() const {
  TransitionTable out = *this;
  for (int q = 0; q < n_states_; ++q)
    for (int s = 0; s < n_symbols_; ++s)
      if (is_defined(q, s)) out.slots_[slot(q, s)].dir = flipped(at(q, s).dir);
  return out;
}

TransitionTable TransitionTable::with_state_permutation(
    std::span<const int> perm) const {
  TransitionTable out(n_states_, n_symbols_);
  for (int q = 0; q < n_states_; ++q)
    for (int s = 0; s < n_symbols_; ++s)
      if (is_defined(q, s)) {
        Transition t = at(q, s);
        t.next = static_cast<uint8_t>(perm[t.next]);
        out.define(perm[q], s, t);
      }
  return out;
}

TransitionTable TransitionTable::with_symbol_permutation(
    std::span<const int> perm) const {
  TransitionTable out(n_states_, n_symbols_);
  for (int q = 0; q < n_states_; ++q)
    for (int s = 0; s < n_symbols_; ++s)
      if (is_defined(q, s)) {
        Transition t = at(q, s);
        t.write = static_cast<uint8_t>(perm[t.write]);
        out.define(q, perm[s], t);
      }
  return out;
}

TransitionTable parse_machine(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty machine text");

  // Split into state groups.
  std::array<std::string_view, kMaxStates> groups;
  int n_states = 0;
  size_t start = 0;
  while (true) {
    size_t sep = text.find('_', start);
    std::string_view group = sep == std::string_view::npos
                                 ? text.substr(start)
                                 : text.substr(start, sep - start);
    if (n_states == kMaxStates)
      throw std::invalid_argument("too many state groups");
    groups[n_states++] = group;
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }

  if (groups[0].size() % 3 != 0 || groups[0].empty())
    throw std::invalid_argument("group length not a multiple of 3");
  int n_symbols = static_cast<int>(groups[0].size() / 3);
  for (int q = 0; q < n_states; ++q)
    if (static_cast<int>(groups[q].size()) != 3 * n_symbols)
      throw std::invalid_argument("inconsistent group lengths");
  if (n_symbols < 2 || n_symbols > kMaxSymbols)
    throw std::invalid_argument("symbol count out of range");

  TransitionTable tm(n_states, n_symbols);
  for (int q = 0; q < n_states; ++q) {
    for (int s = 0; s < n_symbols; ++s) {
      std::string_view triple = groups[q].substr(3 * s, 3);
      if (triple == "---") continue;
      char wc = triple[0], dc = triple[1], nc = triple[2];
      if (wc < '0' || wc > '9' || (dc != 'L' && dc != 'R') || nc < 'A' ||
          nc > 'Z')
        throw std::invalid_argument("malformed triple: " + std::string(triple));
      int write = wc - '0';
      if (write >= n_symbols)
        throw std::invalid_argument("write symbol out of range: " +
                                    std::string(triple));
      int next = nc - 'A';
      // Any letter outside the state space marks a known-halting transition
      // (the `1RZ` convention); it denotes the same partial table.
      if (next >= n_states) continue;
      tm.define(q, s,
                Transition{static_cast<uint8_t>(write),
                           dc == 'L' ? Dir::Left : Dir::Right,
                           static_cast<uint8_t>(next)});
    }
  }
  return tm;
}

std::string emit_machine(const TransitionTable& tm) {
  std::string out;
  out.reserve(tm.n_states() * (3 * tm.n_symbols() + 1));
  for (int q = 0; q < tm.n_states(); ++q) {
    if (q) out.push_back('_');
    for (int s = 0; s < tm.n_symbols(); ++s) {
      if (!tm.is_defined(q, s)) {
        out += "---";
        continue;
      }
      const Transition& t = tm.at(q, s);
      out.push_back(static_cast<char>('0' + t.write));
      out.push_back(t.dir == Dir::Left ? 'L' : 'R');
      out.push_back(static_cast<char>('A' + t.next));
    }
  }
  return out;
}

}  // namespace bb
