#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bb/machine.hpp"
#include "bb/record.hpp"

namespace bb {

enum class SymbolOrder : uint8_t {
  Strict,  // unseen symbols introduced in ascending order
  Quasi,   // no order imposed on non-0 symbols
};

// One node of the TNF tree: a machine plus how many states/symbols occur in
// its defined transitions (A and 0 always count). halt_state/halt_symbol name
// the undefined transition reached by the node's halting run; they are set by
// the decider before children() is called.
struct TnfNode {
  TransitionTable machine;
  int seen_states = 1;
  int seen_symbols = 1;
  int halt_state = -1;
  int halt_symbol = -1;
};

TnfNode root(int n_states, int n_symbols);

// All ways to define the node's halting transition. At the root level only
// right-moving transitions are generated; children with every transition
// defined are obviously nonhalting and are dropped. Order: write ascending,
// then R before L, then next-state ascending.
std::vector<TnfNode> children(const TnfNode& node, SymbolOrder order);

// Depth-first queue over TNF nodes. Nodes are popped in deterministic DFS
// order; each popped node must be reported decided (push_children for halting
// nodes) before the next pop.
class SearchQueue {
 public:
  explicit SearchQueue(TnfNode root_node, SymbolOrder order);

  bool empty() const { return pending_.empty(); }
  TnfNode pop();
  // For a halting node: expands its children into the queue.
  void push_children(const TnfNode& decided);

  int64_t visited() const { return visited_; }

 private:
  std::vector<TnfNode> pending_;
  SymbolOrder order_;
  int64_t visited_ = 0;
};

// Decider callback: full pipeline verdict for one machine.
using DeciderFn = std::function<DecideOutcome(const TransitionTable&)>;
// Record sink; called in canonical DFS order.
using RecordSink = std::function<void(const MachineRecord&)>;

struct EnumStats {
  int64_t total = 0;
  int64_t halt = 0;
  int64_t nonhalt = 0;
  int64_t unknown = 0;
  int64_t assumed_nonhalt = 0;
};

// Enumerates every TNF node of the (n_states, n_symbols) tree, deciding each
// machine with `decide` and emitting exactly one record per node. UNKNOWN
// machines are emitted as holdout records and get no children.
EnumStats enumerate_tnf(int n_states, int n_symbols, SymbolOrder order,
                        const DeciderFn& decide, const RecordSink& sink,
                        int jobs = 1);

}  // namespace bb
