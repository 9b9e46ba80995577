#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bb/decider_loops.hpp"
#include "bb/enumerate.hpp"
#include "bb/simulate.hpp"
#include "bb/tnf.hpp"
#include "oracle.hpp"

using namespace bb;

namespace {

DecideOutcome loops_decide(const TransitionTable& tm, int64_t limit) {
  LoopsResult r = decide_loops(tm, limit);
  DecideOutcome out;
  out.status = r.status;
  out.stage_index = 0;
  out.decider_id = loops_decider_id(limit);
  if (r.status == Status::Halt) out.halt = r.halt;
  return out;
}

struct Collected {
  EnumStats stats;
  std::vector<MachineRecord> records;
};

Collected enumerate_with_loops(int n, int s, SymbolOrder order, int64_t limit,
                               int jobs = 1) {
  Collected c;
  c.stats = enumerate_tnf(
      n, s, order,
      [limit](const TransitionTable& tm) { return loops_decide(tm, limit); },
      [&c](const MachineRecord& r) { c.records.push_back(r); }, jobs);
  return c;
}

}  // namespace

TEST_CASE("root nodes are all-undefined tables") {
  CHECK(emit_machine(root(5, 2).machine) ==
        "------_------_------_------_------");
  CHECK(emit_machine(root(2, 4).machine) == "------------_------------");
}

TEST_CASE("the (5,2) root has 4 children") {
  TnfNode r = root(5, 2);
  r.halt_state = 0;
  r.halt_symbol = 0;
  std::vector<TnfNode> kids = children(r, SymbolOrder::Strict);
  REQUIRE(kids.size() == 4);
  CHECK(emit_machine(kids[0].machine).substr(0, 6) == "0RA---");
  CHECK(emit_machine(kids[1].machine).substr(0, 6) == "0RB---");
  CHECK(emit_machine(kids[2].machine).substr(0, 6) == "1RA---");
  CHECK(emit_machine(kids[3].machine).substr(0, 6) == "1RB---");
}

TEST_CASE("the first-level 1RB machine has 12 children") {
  TnfNode r = root(5, 2);
  r.halt_state = 0;
  r.halt_symbol = 0;
  TnfNode one_rb = children(r, SymbolOrder::Strict)[3];
  one_rb.halt_state = 1;  // halts immediately at (B, 0)
  one_rb.halt_symbol = 0;
  std::vector<TnfNode> kids = children(one_rb, SymbolOrder::Strict);
  CHECK(kids.size() == 12);  // {0,1} x {R,L} x {A,B,C}
}

TEST_CASE("no unseen state left: children range over all states") {
  TransitionTable tm(2, 2);
  tm.define(0, 0, Transition{1, Dir::Right, 1});
  tm.define(1, 0, Transition{1, Dir::Left, 0});
  TnfNode node{tm, 2, 2, 0, 1};
  std::vector<TnfNode> kids = children(node, SymbolOrder::Strict);
  CHECK(kids.size() == 8);  // {0,1} x {R,L} x {A,B}, none fully defined
}

TEST_CASE("children filling the last slot are dropped") {
  TransitionTable tm(2, 2);
  tm.define(0, 0, Transition{1, Dir::Right, 1});
  tm.define(0, 1, Transition{1, Dir::Left, 0});
  tm.define(1, 0, Transition{1, Dir::Left, 0});
  TnfNode node{tm, 2, 2, 1, 1};
  CHECK(children(node, SymbolOrder::Strict).empty());
}

TEST_CASE("S(1) = 1 from the one-state tree") {
  Collected c = enumerate_with_loops(1, 2, SymbolOrder::Strict, 130);
  CHECK(c.stats.total == 3);  // root + 0RA + 1RA
  CHECK(c.stats.halt == 1);
  CHECK(c.stats.nonhalt == 2);
  int64_t best = 0;
  for (const auto& r : c.records)
    if (r.halt) best = std::max(best, r.halt->steps);
  CHECK(best == 1);
}

TEST_CASE("Table-4 counts for the (2,2) tree") {
  Collected c = enumerate_with_loops(2, 2, SymbolOrder::Strict, 130);
  CHECK(c.stats.total == 61);
  CHECK(c.stats.nonhalt == 42);
  CHECK(c.stats.halt == 19);
  CHECK(c.stats.unknown == 0);
}

TEST_CASE("records are deterministic and worker-count independent") {
  Collected a = enumerate_with_loops(3, 2, SymbolOrder::Strict, 130, 1);
  Collected b = enumerate_with_loops(3, 2, SymbolOrder::Strict, 130, 4);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i)
    CHECK(a.records[i].to_line() == b.records[i].to_line());
}

TEST_CASE("no two emitted (2,2) machines are permutation+mirror related") {
  Collected c = enumerate_with_loops(2, 2, SymbolOrder::Strict, 130);
  std::set<std::string> seen;
  for (const auto& r : c.records) seen.insert(r.machine);
  REQUIRE(seen.size() == c.records.size());

  std::vector<int> id{0, 1}, swp{0, 1};
  std::swap(swp[0], swp[1]);  // only non-A permutation for n=2 is identity
  for (const auto& text : seen) {
    TransitionTable tm = parse_machine(text);
    // Swapping non-A states means nothing for n=2 (B has no peer), so check
    // the mirror only: the mirror must not be another emitted machine unless
    // it is the machine itself.
    std::string mirrored = emit_machine(tm.mirrored());
    if (mirrored != text) CHECK(!seen.count(mirrored));
  }
}

TEST_CASE("no two emitted (3,2) machines are permutation+mirror related") {
  // Loops alone leave some (3,2) holdouts; the uniqueness property holds for
  // whatever gets enumerated regardless.
  Collected c = enumerate_with_loops(3, 2, SymbolOrder::Strict, 130);
  std::set<std::string> seen;
  for (const auto& r : c.records) seen.insert(r.machine);
  REQUIRE(seen.size() == c.records.size());

  // Permutations of {B, C} composed with optional mirroring.
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}};
  for (const auto& text : seen) {
    TransitionTable tm = parse_machine(text);
    for (const auto& perm : perms) {
      for (bool mirror : {false, true}) {
        if (!mirror && perm[1] == 1) continue;  // identity
        TransitionTable other = tm.with_state_permutation(perm);
        if (mirror) other = other.mirrored();
        std::string other_text = emit_machine(other);
        if (other_text != text) CHECK(!seen.count(other_text));
      }
    }
  }
}

TEST_CASE("every halting syntactic (2,2) machine normalizes to an emitted record") {
  Collected c = enumerate_with_loops(2, 2, SymbolOrder::Strict, 130);
  std::set<std::string> halt_records;
  for (const auto& r : c.records)
    if (r.status == Status::Halt) halt_records.insert(r.machine);
  REQUIRE(halt_records.size() == 19);

  // All (2*2*2+1)^4 = 6561 syntactic tables; S(2)=6 bounds halting runs.
  std::set<std::string> normalized;
  int halting = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int cc = 0; cc < 9; ++cc)
        for (int d = 0; d < 9; ++d) {
          TransitionTable tm(2, 2);
          int slots[4] = {a, b, cc, d};
          for (int i = 0; i < 4; ++i) {
            if (slots[i] == 8) continue;  // undefined
            tm.define(i / 2, i % 2,
                      Transition{static_cast<uint8_t>(slots[i] & 1),
                                 (slots[i] >> 1) & 1 ? Dir::Left : Dir::Right,
                                 static_cast<uint8_t>((slots[i] >> 2) & 1)});
          }
          SimOutcome out = simulate(tm, 7);
          if (!out.halted) continue;
          ++halting;
          TnfResult norm = tnf_normalize(tm, 10);
          REQUIRE(norm.complete);
          std::string text = emit_machine(norm.table);
          CHECK(halt_records.count(text));
          normalized.insert(text);
        }
  CHECK(halting > 0);
  CHECK(normalized == halt_records);
}

TEST_CASE("quasi mode offers all symbols at every fill") {
  TnfNode r = root(2, 4);
  r.halt_state = 0;
  r.halt_symbol = 0;
  CHECK(children(r, SymbolOrder::Quasi).size() == 8);   // 4 writes, R only, {A,B}
  CHECK(children(r, SymbolOrder::Strict).size() == 4);  // 2 writes, R only, {A,B}
}
