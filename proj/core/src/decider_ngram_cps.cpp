#include "bb/decider_ngram_cps.hpp"

#include <algorithm>
#include <functional>
#include <memory>

namespace bb {

namespace {

inline size_t hash_bytes(const void* data, size_t len, size_t seed) {
  // FNV-1a
  const unsigned char* p = static_cast<const unsigned char*>(data);
  size_t h = seed ^ 1469598103934665603ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

struct VecHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    return hash_bytes(v.data(), v.size() * sizeof(uint32_t), v.size());
  }
};

// Seen n-grams of one side: dedup set, insertion-ordered list, and an index
// from the (n-1)-symbol overlap key to the grams carrying it, so successor
// expansion touches only matching grams.
class GramSet {
 public:
  explicit GramSet(bool key_is_prefix) : key_is_prefix_(key_is_prefix) {}

  bool insert(const std::vector<uint32_t>& gram) {
    auto [it, added] = dedup_.insert(gram);
    if (!added) return false;
    grams_.push_back(gram);
    index_[overlap_key(gram)].push_back(gram);
    return true;
  }

  // Grams whose overlap key equals `key`.
  const std::vector<std::vector<uint32_t>>* matching(
      const std::vector<uint32_t>& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &it->second;
  }

  const std::vector<std::vector<uint32_t>>& all() const { return grams_; }

 private:
  std::vector<uint32_t> overlap_key(const std::vector<uint32_t>& gram) const {
    if (key_is_prefix_)
      return {gram.begin(), gram.end() - 1};
    return {gram.begin() + 1, gram.end()};
  }

  bool key_is_prefix_;
  std::unordered_set<std::vector<uint32_t>, VecHash> dedup_;
  std::vector<std::vector<uint32_t>> grams_;
  std::unordered_map<std::vector<uint32_t>, std::vector<std::vector<uint32_t>>,
                     VecHash>
      index_;
};

}  // namespace

size_t LocalConfigurationHash::operator()(const LocalConfiguration& c) const {
  size_t h = hash_bytes(c.left.data(), c.left.size() * sizeof(uint32_t),
                        0x9e3779b97f4a7c15ull);
  h = hash_bytes(c.right.data(), c.right.size() * sizeof(uint32_t), h);
  h = hash_bytes(&c.middle, sizeof(c.middle), h);
  return h ^ (static_cast<size_t>(c.state) << 1);
}

AugmentedAlphabet::AugmentedAlphabet(NgramVariant variant, int history_len,
                                     int /*n_states*/, int n_symbols)
    : variant_(variant), history_len_(history_len), n_symbols_(n_symbols) {
  intern(0, {});  // zero symbol: "0, []"
  if (variant_ == NgramVariant::Plain)
    for (int b = 1; b < n_symbols; ++b) intern(static_cast<uint8_t>(b), {});
}

uint32_t AugmentedAlphabet::intern(uint8_t base, std::vector<uint8_t> history) {
  std::string key;
  key.reserve(history.size() + 1);
  key.push_back(static_cast<char>(base));
  for (uint8_t h : history) key.push_back(static_cast<char>(h));
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(entries_.size());
  entries_.push_back(Entry{base, std::move(history)});
  index_.emplace(std::move(key), id);
  return id;
}

uint32_t AugmentedAlphabet::on_write(uint32_t id, int state,
                                     uint8_t write_base) {
  if (variant_ == NgramVariant::Plain) return write_base;

  uint8_t pair = static_cast<uint8_t>(state * n_symbols_ + entries_[id].base);
  std::vector<uint8_t> hist;
  const std::vector<uint8_t>& old = entries_[id].history;
  if (variant_ == NgramVariant::FixedHistory) {
    hist.reserve(static_cast<size_t>(history_len_));
    if (history_len_ > 0) {
      hist.push_back(pair);
      for (uint8_t h : old) {
        if (static_cast<int>(hist.size()) >= history_len_) break;
        hist.push_back(h);
      }
    }
  } else {  // LRU: the pair bubbles up to the front, duplicates removed
    hist.reserve(old.size() + 1);
    hist.push_back(pair);
    for (uint8_t h : old)
      if (h != pair) hist.push_back(h);
  }
  return intern(write_base, std::move(hist));
}

std::vector<LocalConfiguration> right_move_successors(
    const LocalConfiguration& c, uint32_t write_id, uint8_t next_state,
    const std::vector<std::vector<uint32_t>>& right_grams) {
  std::vector<uint32_t> new_left(c.left.begin() + 1, c.left.end());
  new_left.push_back(write_id);
  std::vector<uint32_t> overlap(c.right.begin() + 1, c.right.end());

  std::vector<LocalConfiguration> out;
  for (const auto& r : right_grams) {
    if (!std::equal(overlap.begin(), overlap.end(), r.begin())) continue;
    LocalConfiguration succ;
    succ.left = new_left;
    succ.right = r;
    succ.state = next_state;
    succ.middle = c.right.front();
    out.push_back(std::move(succ));
  }
  return out;
}

std::vector<LocalConfiguration> left_move_successors(
    const LocalConfiguration& c, uint32_t write_id, uint8_t next_state,
    const std::vector<std::vector<uint32_t>>& left_grams) {
  std::vector<uint32_t> new_right;
  new_right.reserve(c.right.size());
  new_right.push_back(write_id);
  new_right.insert(new_right.end(), c.right.begin(), c.right.end() - 1);
  std::vector<uint32_t> overlap(c.left.begin(), c.left.end() - 1);

  std::vector<LocalConfiguration> out;
  for (const auto& l : left_grams) {
    if (!std::equal(overlap.begin(), overlap.end(), l.begin() + 1)) continue;
    LocalConfiguration succ;
    succ.left = l;
    succ.right = new_right;
    succ.state = next_state;
    succ.middle = c.left.back();
    out.push_back(std::move(succ));
  }
  return out;
}

NgramResult decide_ngram_cps(const TransitionTable& tm,
                             const NgramParams& params) {
  NgramResult result;
  result.alphabet = std::make_unique<AugmentedAlphabet>(
      params.variant, params.history_len, tm.n_states(), tm.n_symbols());
  AugmentedAlphabet& alpha = *result.alphabet;

  GramSet left_set(/*key_is_prefix=*/false);   // matched by (n-1)-suffix
  GramSet right_set(/*key_is_prefix=*/true);   // matched by (n-1)-prefix
  std::vector<uint32_t> g0_left(static_cast<size_t>(params.left_len), 0);
  std::vector<uint32_t> g0_right(static_cast<size_t>(params.right_len), 0);
  left_set.insert(g0_left);
  right_set.insert(g0_right);

  LocalConfigSet configs;
  LocalConfiguration seed{g0_left, g0_right, 0, 0};
  configs.insert(seed);

  std::vector<LocalConfiguration> visit;
  while (true) {
    visit.assign(configs.begin(), configs.end());
    bool any_updates = false;
    while (!visit.empty()) {
      LocalConfiguration c = std::move(visit.back());
      visit.pop_back();

      auto t = tm.transition(c.state, alpha.base(c.middle));
      if (!t) return result;  // undefined transition met: cannot conclude

      uint32_t w = alpha.on_write(c.middle, c.state, t->write);
      std::vector<LocalConfiguration> succs;
      if (t->dir == Dir::Right) {
        left_set.insert(c.left);
        std::vector<uint32_t> overlap(c.right.begin() + 1, c.right.end());
        if (const auto* match = right_set.matching(overlap))
          succs = right_move_successors(c, w, t->next, *match);
      } else {
        right_set.insert(c.right);
        std::vector<uint32_t> overlap(c.left.begin(), c.left.end() - 1);
        if (const auto* match = left_set.matching(overlap))
          succs = left_move_successors(c, w, t->next, *match);
      }
      for (LocalConfiguration& succ : succs) {
        if (configs.insert(succ).second) {
          if (static_cast<int>(configs.size()) > params.max_configs)
            return result;  // early termination: set grew past the limit
          visit.push_back(std::move(succ));
          any_updates = true;
        }
      }
    }
    if (!any_updates) break;
  }

  // The set is closed and includes no undefined transition.
  result.status = Status::Nonhalt;
  result.configs = std::move(configs);
  result.left_grams = left_set.all();
  result.right_grams = right_set.all();
  return result;
}

std::string ngram_decider_id(const NgramParams& p) {
  std::string id;
  switch (p.variant) {
    case NgramVariant::Plain:
      id = "NGRAM_CPS_IMPL2_params_";
      break;
    case NgramVariant::FixedHistory:
      id = "NGRAM_CPS_IMPL1_params_" + std::to_string(p.history_len) + "_";
      break;
    case NgramVariant::Lru:
      id = "NGRAM_CPS_LRU_params_";
      break;
  }
  id += std::to_string(p.left_len) + "_" + std::to_string(p.right_len) + "_" +
        std::to_string(p.max_configs);
  return id;
}

int64_t simulate_augmented(
    const TransitionTable& tm, AugmentedAlphabet& alphabet, int left_len,
    int right_len, int64_t max_steps,
    const std::function<void(const LocalConfiguration&)>& visit) {
  std::vector<uint32_t> tape(1024, 0);
  int64_t origin = 512;
  int64_t head = 0;
  int state = 0;

  auto cell = [&](int64_t pos) -> uint32_t {
    int64_t i = pos + origin;
    if (i < 0 || i >= static_cast<int64_t>(tape.size())) return 0;
    return tape[static_cast<size_t>(i)];
  };

  for (int64_t step_i = 0; step_i < max_steps; ++step_i) {
    LocalConfiguration c;
    c.left.reserve(static_cast<size_t>(left_len));
    for (int i = left_len; i >= 1; --i) c.left.push_back(cell(head - i));
    c.right.reserve(static_cast<size_t>(right_len));
    for (int i = 1; i <= right_len; ++i) c.right.push_back(cell(head + i));
    c.state = static_cast<uint8_t>(state);
    c.middle = cell(head);
    visit(c);

    auto t = tm.transition(state, alphabet.base(c.middle));
    if (!t) return step_i;
    uint32_t w = alphabet.on_write(c.middle, state, t->write);
    int64_t i = head + origin;
    if (i < 0 || i >= static_cast<int64_t>(tape.size())) {
      size_t n = tape.size();
      std::vector<uint32_t> bigger(3 * n, 0);
      std::copy(tape.begin(), tape.end(), bigger.begin() + n);
      tape.swap(bigger);
      origin += static_cast<int64_t>(n);
      i = head + origin;
    }
    tape[static_cast<size_t>(i)] = w;
    head += t->dir == Dir::Left ? -1 : 1;
    state = t->next;
  }
  return max_steps;
}

}  // namespace bb
