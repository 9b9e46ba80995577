#include "bb/verifier_wfar.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bb {

WeightInterval WeightInterval::shifted(int64_t delta) const {
  WeightInterval out = *this;
  if (!out.lo_inf) out.lo += delta;
  if (!out.hi_inf) out.hi += delta;
  return out;
}

WeightInterval WeightInterval::joined(const WeightInterval& other) const {
  WeightInterval out;
  out.lo_inf = lo_inf || other.lo_inf;
  out.hi_inf = hi_inf || other.hi_inf;
  if (!out.lo_inf) out.lo = std::min(lo, other.lo);
  if (!out.hi_inf) out.hi = std::max(hi, other.hi);
  return out;
}

WeightInterval WeightInterval::clamped(const WeightInterval& window) const {
  WeightInterval out;
  out.lo_inf = lo_inf && window.lo_inf;
  out.hi_inf = hi_inf && window.hi_inf;
  if (!out.lo_inf)
    out.lo = lo_inf ? window.lo : (window.lo_inf ? lo : std::max(lo, window.lo));
  if (!out.hi_inf)
    out.hi = hi_inf ? window.hi : (window.hi_inf ? hi : std::min(hi, window.hi));
  return out;
}

WeightedAutomaton::RunResult WeightedAutomaton::run(const std::string& word,
                                                    bool reversed) const {
  RunResult r;
  auto feed = [&](char c) {
    int sym = c - '0';
    r.weight += weight[static_cast<size_t>(r.state)][static_cast<size_t>(sym)];
    r.state = delta[static_cast<size_t>(r.state)][static_cast<size_t>(sym)];
  };
  if (reversed)
    for (auto it = word.rbegin(); it != word.rend(); ++it) feed(*it);
  else
    for (char c : word) feed(c);
  return r;
}

std::vector<StateBounds> feasible_bounds(const WeightedAutomaton& wa) {
  const int64_t kInf = INT64_MAX / 4;

  // dist = min path weight with `weights`; detect -inf via relaxation after
  // |V| rounds and propagation to everything reachable from a relaxing state.
  auto shortest = [&](auto weight_of) {
    std::vector<int64_t> dist(static_cast<size_t>(wa.n), kInf);
    std::vector<bool> minus_inf(static_cast<size_t>(wa.n), false);
    dist[0] = 0;
    for (int round = 0; round < wa.n; ++round) {
      bool any = false;
      for (int q = 0; q < wa.n; ++q) {
        if (dist[static_cast<size_t>(q)] >= kInf) continue;
        for (int b = 0; b < wa.n_symbols; ++b) {
          int to = wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)];
          int64_t w = dist[static_cast<size_t>(q)] + weight_of(q, b);
          if (w < dist[static_cast<size_t>(to)]) {
            dist[static_cast<size_t>(to)] = w;
            any = true;
          }
        }
      }
      if (!any) break;
    }
    // States still relaxing sit on or behind a negative cycle.
    std::deque<int> queue;
    for (int q = 0; q < wa.n; ++q) {
      if (dist[static_cast<size_t>(q)] >= kInf) continue;
      for (int b = 0; b < wa.n_symbols; ++b) {
        int to = wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)];
        if (dist[static_cast<size_t>(q)] + weight_of(q, b) <
                dist[static_cast<size_t>(to)] &&
            !minus_inf[static_cast<size_t>(to)]) {
          minus_inf[static_cast<size_t>(to)] = true;
          queue.push_back(to);
        }
      }
    }
    while (!queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      for (int b = 0; b < wa.n_symbols; ++b) {
        int to = wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)];
        if (!minus_inf[static_cast<size_t>(to)]) {
          minus_inf[static_cast<size_t>(to)] = true;
          queue.push_back(to);
        }
      }
    }
    return std::pair(std::move(dist), std::move(minus_inf));
  };

  auto [lo, lo_inf] = shortest([&](int q, int b) {
    return wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)];
  });
  auto [neg_hi, hi_inf] = shortest([&](int q, int b) {
    return -wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)];
  });

  std::vector<StateBounds> out(static_cast<size_t>(wa.n));
  for (int q = 0; q < wa.n; ++q) {
    StateBounds& sb = out[static_cast<size_t>(q)];
    sb.reachable = lo[static_cast<size_t>(q)] < kInf;
    if (!sb.reachable) continue;
    sb.feasible.lo_inf = lo_inf[static_cast<size_t>(q)];
    sb.feasible.hi_inf = hi_inf[static_cast<size_t>(q)];
    if (!sb.feasible.lo_inf) sb.feasible.lo = lo[static_cast<size_t>(q)];
    if (!sb.feasible.hi_inf) sb.feasible.hi = -neg_hi[static_cast<size_t>(q)];
  }
  return out;
}

namespace {

using nlohmann::json;

json wa_to_json(const WeightedAutomaton& wa) {
  json doc;
  doc["states"] = wa.n;
  doc["symbols"] = wa.n_symbols;
  json delta = json::array(), weight = json::array();
  for (int q = 0; q < wa.n; ++q) {
    json drow = json::array(), wrow = json::array();
    for (int b = 0; b < wa.n_symbols; ++b) {
      drow.push_back(wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)]);
      wrow.push_back(wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)]);
    }
    delta.push_back(std::move(drow));
    weight.push_back(std::move(wrow));
  }
  doc["delta"] = std::move(delta);
  doc["weight"] = std::move(weight);
  return doc;
}

WeightedAutomaton wa_from_json(const json& doc) {
  WeightedAutomaton wa;
  wa.n = doc.at("states").get<int>();
  wa.n_symbols = doc.at("symbols").get<int>();
  if (wa.n < 1 || wa.n_symbols < 2 || wa.n_symbols > kMaxSymbols)
    throw std::invalid_argument("malformed weighted automaton");
  wa.delta.assign(static_cast<size_t>(wa.n), {});
  wa.weight.assign(static_cast<size_t>(wa.n), {});
  for (int q = 0; q < wa.n; ++q)
    for (int b = 0; b < wa.n_symbols; ++b) {
      int to = doc.at("delta")[static_cast<size_t>(q)][static_cast<size_t>(b)]
                   .get<int>();
      if (to < 0 || to >= wa.n)
        throw std::invalid_argument("weighted automaton transition out of range");
      wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)] = to;
      wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)] =
          doc.at("weight")[static_cast<size_t>(q)][static_cast<size_t>(b)]
              .get<int64_t>();
    }
  return wa;
}

}  // namespace

std::string WfarCertificate::to_json() const {
  json doc;
  doc["left"] = wa_to_json(left);
  doc["right"] = wa_to_json(right);
  doc["P"] = widen;
  return doc.dump(2);
}

WfarCertificate WfarCertificate::from_json(const std::string& text) {
  json doc = json::parse(text);
  WfarCertificate cert;
  cert.left = wa_from_json(doc.at("left"));
  cert.right = wa_from_json(doc.at("right"));
  cert.widen = doc.at("P").get<int64_t>();
  return cert;
}

WfarCertificate WfarCertificate::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open certificate: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

const char* wfar_failure_name(WfarFailure f) {
  switch (f) {
    case WfarFailure::None:
      return "none";
    case WfarFailure::ZeroConditions:
      return "blank-symbol conditions (point 1)";
    case WfarFailure::HaltingConfiguration:
      return "halting configuration accepted";
    case WfarFailure::ClosureBudget:
      return "closure budget exceeded";
  }
  return "none";
}

ClosureResult close_accept_set(const TransitionTable& tm,
                               const WfarCertificate& cert,
                               const ClosureOptions& opts) {
  ClosureResult result;
  std::vector<StateBounds> left_bounds = feasible_bounds(cert.left);
  std::vector<StateBounds> right_bounds = feasible_bounds(cert.right);

  // A bound reaching the cutoff is replaced by +infinity; only the upper side
  // widens. Termination is otherwise guarded by the work-item budget.
  auto widen = [&](WeightInterval itv) {
    if (!itv.hi_inf && itv.hi >= cert.widen) itv.hi_inf = true;
    return itv;
  };
  auto window = [&](const ConfigClassKey& key) {
    const StateBounds& l = left_bounds[key.left_state];
    const StateBounds& r = right_bounds[key.right_state];
    WeightInterval w;
    if (!l.reachable || !r.reachable) {
      w.lo = 1;  // empty: no word reaches this automaton state pair
      w.hi = 0;
      return w;
    }
    w.lo_inf = l.feasible.lo_inf || r.feasible.lo_inf;
    w.hi_inf = l.feasible.hi_inf || r.feasible.hi_inf;
    if (!w.lo_inf) w.lo = l.feasible.lo + r.feasible.lo;
    if (!w.hi_inf) w.hi = l.feasible.hi + r.feasible.hi;
    return w;
  };

  // Clamp-widen-clamp keeps intervals inside the feasible window while still
  // snapping bounds past the cutoff to infinity; stored intervals only grow
  // under join, so the closure reaches a fixpoint.
  auto normalize = [&](WeightInterval itv, const ConfigClassKey& key) {
    if (opts.feasibility_pruning) itv = itv.clamped(window(key));
    itv = widen(itv);
    if (opts.feasibility_pruning) itv = itv.clamped(window(key));
    return itv;
  };

  std::deque<ConfigClassKey> work;
  // Insert-or-join; enqueues the key when the stored interval changed.
  auto insert = [&](const ConfigClassKey& key, WeightInterval itv) {
    itv = normalize(itv, key);
    if (itv.empty()) return false;  // infeasible weighted configuration
    auto it = result.classes.find(key);
    if (it == result.classes.end()) {
      result.classes.emplace(key, itv);
    } else {
      WeightInterval joined = normalize(it->second.joined(itv), key);
      if (joined == it->second) return false;
      it->second = joined;
    }
    if (!tm.is_defined(key.machine_state, key.middle)) {
      result.halt_reached = true;
      result.halting_key = key;
    }
    work.push_back(key);
    return true;
  };

  insert(ConfigClassKey{0, 0, 0, 0}, WeightInterval::exactly(0));

  int64_t processed = 0;
  while (!work.empty() && !result.halt_reached) {
    if (++processed > opts.max_work_items) {
      result.budget_exceeded = true;
      return result;
    }
    ConfigClassKey key = work.front();
    work.pop_front();
    WeightInterval itv = result.classes.at(key);

    auto t = tm.transition(key.machine_state, key.middle);
    if (!t) continue;  // halting classes flag halt_reached at insertion

    if (t->dir == Dir::Right) {
      // New left state reads the written bit; the successor's middle comes
      // from every right-automaton edge into the current right state.
      int p2 = cert.left.delta[key.left_state][t->write];
      int64_t wl = cert.left.weight[key.left_state][t->write];
      for (int q2 = 0; q2 < cert.right.n; ++q2) {
        for (int r2 = 0; r2 < cert.right.n_symbols; ++r2) {
          if (cert.right.delta[static_cast<size_t>(q2)]
                              [static_cast<size_t>(r2)] != key.right_state)
            continue;
          int64_t delta = wl - cert.right.weight[static_cast<size_t>(q2)]
                                                [static_cast<size_t>(r2)];
          ConfigClassKey succ{static_cast<uint8_t>(p2),
                              static_cast<uint8_t>(t->next),
                              static_cast<uint8_t>(r2),
                              static_cast<uint8_t>(q2)};
          insert(succ, itv.shifted(delta));
        }
      }
    } else {
      int q2 = cert.right.delta[key.right_state][t->write];
      int64_t wr = cert.right.weight[key.right_state][t->write];
      for (int p2 = 0; p2 < cert.left.n; ++p2) {
        for (int r2 = 0; r2 < cert.left.n_symbols; ++r2) {
          if (cert.left.delta[static_cast<size_t>(p2)]
                             [static_cast<size_t>(r2)] != key.left_state)
            continue;
          int64_t delta = wr - cert.left.weight[static_cast<size_t>(p2)]
                                               [static_cast<size_t>(r2)];
          ConfigClassKey succ{static_cast<uint8_t>(p2),
                              static_cast<uint8_t>(t->next),
                              static_cast<uint8_t>(r2),
                              static_cast<uint8_t>(q2)};
          insert(succ, itv.shifted(delta));
        }
      }
    }
  }
  return result;
}

WfarOutcome check_wfar(const TransitionTable& tm, const WfarCertificate& cert) {
  WfarOutcome out;
  // Point 1: blank reads keep the initial states with weight 0, so every
  // word-representation of a configuration gets the same weighted class.
  if (cert.left.delta[0][0] != 0 || cert.right.delta[0][0] != 0 ||
      cert.left.weight[0][0] != 0 || cert.right.weight[0][0] != 0) {
    out.failure = WfarFailure::ZeroConditions;
    return out;
  }

  out.closure = close_accept_set(tm, cert);
  if (out.closure.budget_exceeded) {
    out.failure = WfarFailure::ClosureBudget;
    return out;
  }
  if (out.closure.halt_reached) {
    out.failure = WfarFailure::HaltingConfiguration;
    return out;
  }
  out.verified = true;
  return out;
}

bool accepts_configuration(const WfarCertificate& cert,
                           const ClosureResult& closure, const SplitWord& w) {
  auto l = cert.left.run(w.left, /*reversed=*/false);
  auto r = cert.right.run(w.right, /*reversed=*/true);
  ConfigClassKey key{static_cast<uint8_t>(l.state),
                     static_cast<uint8_t>(w.state), w.mid,
                     static_cast<uint8_t>(r.state)};
  auto it = closure.classes.find(key);
  if (it == closure.classes.end()) return false;
  return it->second.contains(l.weight + r.weight);
}

bool accepts_configuration(const WfarCertificate& cert,
                           const ClosureResult& closure,
                           const Configuration& cfg) {
  return accepts_configuration(cert, closure, split_word(cfg));
}

}  // namespace bb
