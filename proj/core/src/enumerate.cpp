#include "bb/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <stdexcept>
#include <thread>

namespace bb {

TnfNode root(int n_states, int n_symbols) {
  TnfNode node;
  node.machine = TransitionTable(n_states, n_symbols);
  node.seen_states = 1;
  node.seen_symbols = 1;
  return node;
}

std::vector<TnfNode> children(const TnfNode& node, SymbolOrder order) {
  if (node.halt_state < 0 || node.halt_symbol < 0)
    throw std::logic_error("children() called on a node with no halt context");

  const TransitionTable& tm = node.machine;
  int n = tm.n_states();
  int s = tm.n_symbols();
  bool at_root = tm.defined_count() == 0;
  int write_count =
      order == SymbolOrder::Quasi ? s : std::min(node.seen_symbols + 1, s);
  int next_count = std::min(node.seen_states + 1, n);

  std::vector<TnfNode> kids;
  kids.reserve(static_cast<size_t>(write_count) * (at_root ? 1 : 2) *
               next_count);
  for (int w = 0; w < write_count; ++w) {
    for (Dir d : {Dir::Right, Dir::Left}) {
      if (at_root && d == Dir::Left) continue;
      for (int next = 0; next < next_count; ++next) {
        TnfNode kid;
        kid.machine = tm;
        kid.machine.define(node.halt_state, node.halt_symbol,
                           Transition{static_cast<uint8_t>(w), d,
                                      static_cast<uint8_t>(next)});
        if (kid.machine.totally_defined()) continue;  // obviously nonhalting
        kid.seen_states = std::max(node.seen_states, next + 1);
        kid.seen_symbols = std::max(node.seen_symbols, w + 1);
        kids.push_back(std::move(kid));
      }
    }
  }
  return kids;
}

SearchQueue::SearchQueue(TnfNode root_node, SymbolOrder order)
    : order_(order) {
  pending_.push_back(std::move(root_node));
}

TnfNode SearchQueue::pop() {
  assert(!pending_.empty());
  TnfNode node = std::move(pending_.back());
  pending_.pop_back();
  ++visited_;
  return node;
}

void SearchQueue::push_children(const TnfNode& decided) {
  std::vector<TnfNode> kids = children(decided, order_);
  // DFS explores children in canonical order: push in reverse.
  for (auto it = kids.rbegin(); it != kids.rend(); ++it)
    pending_.push_back(std::move(*it));
}

namespace {

MachineRecord make_record(const TransitionTable& tm, const DecideOutcome& out) {
  MachineRecord rec;
  rec.machine = emit_machine(tm);
  rec.status = out.status;
  rec.decider_id = out.decider_id;
  rec.halt = out.halt;
  rec.stage_index = out.stage_index;
  return rec;
}

// Runs the DFS rooted at `start`, emitting records in order.
EnumStats run_subtree(TnfNode start, SymbolOrder order,
                      const DeciderFn& decide, const RecordSink& sink) {
  EnumStats stats;
  SearchQueue queue(std::move(start), order);
  while (!queue.empty()) {
    TnfNode node = queue.pop();
    DecideOutcome out = decide(node.machine);
    sink(make_record(node.machine, out));

    ++stats.total;
    switch (out.status) {
      case Status::Halt: {
        ++stats.halt;
        node.halt_state = out.halt ? out.halt->halt_state : -1;
        node.halt_symbol = out.halt ? out.halt->halt_symbol : -1;
        queue.push_children(node);
        break;
      }
      case Status::Nonhalt:
        ++stats.nonhalt;
        break;
      case Status::AssumedNonhalt:
        ++stats.assumed_nonhalt;
        break;
      case Status::Unknown:
        ++stats.unknown;  // holdout: reported, never dropped, no children
        break;
    }
  }
  return stats;
}

void merge(EnumStats& into, const EnumStats& from) {
  into.total += from.total;
  into.halt += from.halt;
  into.nonhalt += from.nonhalt;
  into.unknown += from.unknown;
  into.assumed_nonhalt += from.assumed_nonhalt;
}

}  // namespace

EnumStats enumerate_tnf(int n_states, int n_symbols, SymbolOrder order,
                        const DeciderFn& decide, const RecordSink& sink,
                        int jobs) {
  TnfNode r = root(n_states, n_symbols);
  DecideOutcome out = decide(r.machine);
  sink(make_record(r.machine, out));

  EnumStats stats;
  stats.total = 1;
  if (out.status != Status::Halt || !out.halt) {
    // The all-undefined root halts at step 1; any other verdict means the
    // decider is unsound, but report what we saw instead of guessing.
    stats.unknown += out.status == Status::Unknown;
    stats.nonhalt += out.status == Status::Nonhalt;
    stats.assumed_nonhalt += out.status == Status::AssumedNonhalt;
    return stats;
  }
  stats.halt = 1;
  r.halt_state = out.halt->halt_state;
  r.halt_symbol = out.halt->halt_symbol;

  std::vector<TnfNode> top = children(r, order);
  if (jobs <= 1 || top.size() <= 1) {
    for (TnfNode& child : top)
      merge(stats, run_subtree(std::move(child), order, decide, sink));
    return stats;
  }

  // First-level subtrees are independent work units. Each worker buffers its
  // subtree's records; buffers are flushed in canonical child order, so the
  // merged output is identical for any worker count or schedule.
  std::vector<std::vector<MachineRecord>> buffers(top.size());
  std::vector<EnumStats> sub(top.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= top.size()) return;
      auto& buf = buffers[i];
      RecordSink buffered = [&buf](const MachineRecord& rec) {
        buf.push_back(rec);
      };
      sub[i] = run_subtree(std::move(top[i]), order, decide, buffered);
    }
  };
  std::vector<std::thread> pool;
  int workers = std::min<int>(jobs, static_cast<int>(top.size()));
  pool.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (size_t i = 0; i < top.size(); ++i) {
    merge(stats, sub[i]);
    for (const MachineRecord& rec : buffers[i]) sink(rec);
    buffers[i].clear();
    buffers[i].shrink_to_fit();
  }
  return stats;
}

}  // namespace bb
