#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bb/simulate.hpp"
#include "bb/verifier_wfar.hpp"
#include "bb/word_rep.hpp"
#include "oracle.hpp"

using namespace bb;

namespace {
const char* kFig12Machine = "1RB---_0RC1LC_1RD1RC_1LE1LD_0RA0LE";
const char* kFixture = BBENUM_DATA_DIR "/certs/fig12_wfar.json";

WfarCertificate fixture() { return WfarCertificate::load(kFixture); }
}  // namespace

TEST_CASE("feasible bounds of the fixture's left automaton") {
  WfarCertificate cert = fixture();
  auto bounds = feasible_bounds(cert.left);
  // p2 has achievable weights [0, +inf).
  CHECK(bounds[2].reachable);
  CHECK(!bounds[2].feasible.lo_inf);
  CHECK(bounds[2].feasible.lo == 0);
  CHECK(bounds[2].feasible.hi_inf);
  // p0 only sees weight-0 paths.
  CHECK(bounds[0].feasible == WeightInterval::exactly(0));
}

TEST_CASE("feasible bounds of the 0^n 1^n recognizer") {
  // q0 --0/+1--> q0, q0 --1/-1--> q1, q1 --1/-1--> q1, q1 --0/0--> q2,
  // q2 --0,1/0--> q2.
  WeightedAutomaton wa;
  wa.n = 3;
  wa.n_symbols = 2;
  wa.delta = {{0, 1}, {2, 1}, {2, 2}};
  wa.weight = {{1, -1}, {0, -1}, {0, 0}};
  auto bounds = feasible_bounds(wa);
  CHECK(bounds[0].feasible.lo == 0);
  CHECK(bounds[0].feasible.hi_inf);
  CHECK(bounds[1].feasible.lo_inf);
  CHECK(bounds[1].feasible.hi_inf);
}

TEST_CASE("single state with zero self-loops is pinned to [0,0]") {
  WeightedAutomaton wa;
  wa.n = 1;
  wa.n_symbols = 2;
  wa.delta = {{0, 0}};
  wa.weight = {{0, 0}};
  auto bounds = feasible_bounds(wa);
  CHECK(bounds[0].feasible == WeightInterval::exactly(0));
}

TEST_CASE("feasible bounds agree with exhaustive path enumeration") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    WeightedAutomaton wa;
    wa.n = 2 + static_cast<int>(rng() % 4);
    wa.n_symbols = 2;
    wa.delta.assign(static_cast<size_t>(wa.n), {});
    wa.weight.assign(static_cast<size_t>(wa.n), {});
    for (int q = 0; q < wa.n; ++q)
      for (int b = 0; b < 2; ++b) {
        wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)] =
            static_cast<int>(rng() % wa.n);
        wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)] =
            static_cast<int64_t>(rng() % 5) - 2;
      }
    auto bounds = feasible_bounds(wa);

    // Enumerate all words up to length 12.
    std::vector<std::optional<std::pair<int64_t, int64_t>>> observed(
        static_cast<size_t>(wa.n));
    observed[0] = {0, 0};
    std::vector<std::pair<int, int64_t>> frontier = {{0, 0}};
    for (int len = 0; len < 12; ++len) {
      std::vector<std::pair<int, int64_t>> next;
      for (auto [q, w] : frontier)
        for (int b = 0; b < 2; ++b) {
          int to = wa.delta[static_cast<size_t>(q)][static_cast<size_t>(b)];
          int64_t w2 =
              w + wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)];
          next.emplace_back(to, w2);
          auto& o = observed[static_cast<size_t>(to)];
          if (!o)
            o = {w2, w2};
          else
            o = {std::min(o->first, w2), std::max(o->second, w2)};
        }
      frontier = std::move(next);
      // Exponential frontier: dedup to keep the oracle cheap.
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()),
                     frontier.end());
    }
    for (int q = 0; q < wa.n; ++q) {
      const auto& o = observed[static_cast<size_t>(q)];
      if (!o) {
        CHECK(!bounds[static_cast<size_t>(q)].reachable);
        continue;
      }
      REQUIRE(bounds[static_cast<size_t>(q)].reachable);
      // Every observed weight fits the computed window.
      CHECK(bounds[static_cast<size_t>(q)].feasible.contains(o->first));
      CHECK(bounds[static_cast<size_t>(q)].feasible.contains(o->second));
      // Finite ends of the window are attained by some path.
      const WeightInterval& itv = bounds[static_cast<size_t>(q)].feasible;
      if (!itv.lo_inf) CHECK(itv.lo >= o->first - 0);  // lo is the min
      if (!itv.lo_inf) CHECK(itv.lo <= o->first);
      if (!itv.hi_inf) CHECK(itv.hi >= o->second);
    }
  }
}

TEST_CASE("the fixture certificate verifies") {
  WfarOutcome out = check_wfar(parse_machine(kFig12Machine), fixture());
  CHECK(out.verified);
  CHECK(out.failure == WfarFailure::None);
}

TEST_CASE("closed set contains [p2] C1 [q0] with weight 1") {
  WfarOutcome out = check_wfar(parse_machine(kFig12Machine), fixture());
  REQUIRE(out.verified);
  auto it = out.closure.classes.find(ConfigClassKey{2, 2, 1, 0});
  REQUIRE(it != out.closure.classes.end());
  CHECK(it->second.contains(1));
  CHECK(it->second.lo == 1);
}

TEST_CASE("disabling feasibility pruning reaches a halting class") {
  ClosureOptions opts;
  opts.feasibility_pruning = false;
  ClosureResult r =
      close_accept_set(parse_machine(kFig12Machine), fixture(), opts);
  CHECK(r.halt_reached);
  CHECK(r.halting_key.left_state == 0);     // [p0]
  CHECK(r.halting_key.machine_state == 0);  // A
  CHECK(r.halting_key.middle == 1);         // reading 1: delta(A,1) undefined
}

TEST_CASE("machine with undefined start halts immediately") {
  ClosureResult r = close_accept_set(TransitionTable(5, 2), fixture());
  CHECK(r.halt_reached);
}

TEST_CASE("non-zero blank weight fails point 1") {
  WfarCertificate cert = fixture();
  cert.left.weight[0][0] = 1;
  WfarOutcome out = check_wfar(parse_machine(kFig12Machine), cert);
  CHECK(!out.verified);
  CHECK(out.failure == WfarFailure::ZeroConditions);
}

TEST_CASE("perturbed weights never verify a halting machine") {
  // The halting probe is the oracle: whatever the perturbation does to the
  // certificate, a Verified outcome on a halting machine would be unsound.
  TransitionTable halting = parse_machine("1RB1LB_1LA1RZ");
  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    WfarCertificate cert = fixture();
    auto& wa = (rng() & 1) ? cert.left : cert.right;
    int q = static_cast<int>(rng() % static_cast<unsigned>(wa.n));
    int b = static_cast<int>(rng() % 2);
    wa.weight[static_cast<size_t>(q)][static_cast<size_t>(b)] +=
        static_cast<int64_t>(rng() % 5) - 2;
    if (wa.weight[0][0] != 0) continue;  // point 1 already rejects those
    WfarOutcome out = check_wfar(halting, cert);
    CHECK(!out.verified);
  }
}

TEST_CASE("the worked example configuration is accepted with weight 1") {
  WfarCertificate cert = fixture();
  auto l = cert.left.run("10101", false);
  CHECK(l.state == 2);
  CHECK(l.weight == 2);
  auto r = cert.right.run("01", true);
  CHECK(r.state == 0);
  CHECK(r.weight == -1);

  WfarOutcome out = check_wfar(parse_machine(kFig12Machine), cert);
  REQUIRE(out.verified);
  SplitWord w{"10101", 2, 1, "01"};
  CHECK(accepts_configuration(cert, out.closure, w));
}

TEST_CASE("the initial configuration is accepted with weight 0") {
  WfarCertificate cert = fixture();
  WfarOutcome out = check_wfar(parse_machine(kFig12Machine), cert);
  REQUIRE(out.verified);
  CHECK(accepts_configuration(cert, out.closure, SplitWord{"", 0, 0, ""}));
  // Zero padding never changes the verdict.
  CHECK(accepts_configuration(cert, out.closure,
                              SplitWord{"000", 0, 0, "0000"}));
  SplitWord w{"10101", 2, 1, "01"};
  SplitWord padded{"0010101", 2, 1, "0100"};
  CHECK(accepts_configuration(cert, out.closure, w) ==
        accepts_configuration(cert, out.closure, padded));
}

TEST_CASE("accepted configurations are step-closed and never halt") {
  TransitionTable tm = parse_machine(kFig12Machine);
  WfarCertificate cert = fixture();
  WfarOutcome out = check_wfar(tm, cert);
  REQUIRE(out.verified);

  std::mt19937 rng(321);
  int accepted = 0;
  for (int trial = 0; trial < 20000 && accepted < 200; ++trial) {
    Configuration cfg;
    cfg.reset();
    int span = static_cast<int>(rng() % 12);
    for (int p = 0; p < span; ++p)
      cfg.poke(p - span / 2, static_cast<uint8_t>(rng() % 2));
    cfg.set_head(static_cast<int64_t>(rng() % (span + 3)) - span / 2 - 1);
    cfg.set_state(static_cast<int>(rng() % 5));
    if (!accepts_configuration(cert, out.closure, cfg)) continue;
    ++accepted;

    // One step stays accepted (weighted forward closure, literally).
    Configuration next = cfg;
    REQUIRE(next.step_applied(tm));
    CHECK(accepts_configuration(cert, out.closure, next));

    // And no halt within 1000 steps.
    Configuration probe = cfg;
    bool halted = false;
    for (int i = 0; i < 1000; ++i)
      if (!probe.step_applied(tm)) {
        halted = true;
        break;
      }
    CHECK(!halted);
  }
  CHECK(accepted == 200);
}

TEST_CASE("raising the cutoff keeps the fixture verified") {
  TransitionTable tm = parse_machine(kFig12Machine);
  for (int64_t p : {1, 2, 3, 5, 10, 100}) {
    WfarCertificate cert = fixture();
    cert.widen = p;
    CHECK(check_wfar(tm, cert).verified);
  }
}

TEST_CASE("certificate JSON round-trips") {
  WfarCertificate cert = fixture();
  WfarCertificate back = WfarCertificate::from_json(cert.to_json());
  CHECK(back.widen == cert.widen);
  CHECK(back.left.delta == cert.left.delta);
  CHECK(back.left.weight == cert.left.weight);
  CHECK(back.right.delta == cert.right.delta);
  CHECK(back.right.weight == cert.right.weight);
}
