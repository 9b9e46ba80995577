#include <benchmark/benchmark.h>

#include "bb/machine.hpp"
#include "bb/simulate.hpp"

namespace {

void BM_SimulateChampion5(benchmark::State& state) {
  bb::TransitionTable tm =
      bb::parse_machine("1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA");
  bb::Configuration cfg;
  for (auto _ : state) {
    bb::SimOutcome out = bb::simulate(tm, 1000000, cfg);
    benchmark::DoNotOptimize(out.steps);
  }
  state.SetItemsProcessed(state.iterations() * 1000000);
}
BENCHMARK(BM_SimulateChampion5)->Unit(benchmark::kMillisecond);

void BM_SimulateToHalt4(benchmark::State& state) {
  bb::TransitionTable tm = bb::parse_machine("1RB1LB_1LA0LC_1RZ1LD_1RD0RA");
  bb::Configuration cfg;
  for (auto _ : state) {
    bb::SimOutcome out = bb::simulate(tm, 200, cfg);
    benchmark::DoNotOptimize(out.sigma);
  }
}
BENCHMARK(BM_SimulateToHalt4);

}  // namespace
