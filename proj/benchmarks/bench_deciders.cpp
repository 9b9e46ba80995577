#include <benchmark/benchmark.h>

#include "bb/decider_loops.hpp"
#include "bb/decider_ngram_cps.hpp"
#include "bb/decider_repwl.hpp"

namespace {

void BM_LoopsCycler(benchmark::State& state) {
  bb::TransitionTable tm =
      bb::parse_machine("1RB---_0RC0LE_1LD0LA_1LB1RB_1LC1RC");
  for (auto _ : state)
    benchmark::DoNotOptimize(bb::decide_loops(tm, 130).status);
}
BENCHMARK(BM_LoopsCycler);

void BM_LoopsTranslated(benchmark::State& state) {
  bb::TransitionTable tm =
      bb::parse_machine("1RB---_1LB1LC_0RD0RC_1LE1RE_1LA0LE");
  for (auto _ : state)
    benchmark::DoNotOptimize(bb::decide_loops(tm, 130).status);
}
BENCHMARK(BM_LoopsTranslated);

void BM_NgramPlain(benchmark::State& state) {
  bb::TransitionTable tm =
      bb::parse_machine("1RB0LE_1LC0RD_---1LD_1RE0LA_1LA0RE");
  bb::NgramParams params{bb::NgramVariant::Plain, 0, 3, 3, 5000};
  for (auto _ : state)
    benchmark::DoNotOptimize(bb::decide_ngram_cps(tm, params).status);
}
BENCHMARK(BM_NgramPlain)->Unit(benchmark::kMicrosecond);

void BM_NgramLru(benchmark::State& state) {
  bb::TransitionTable tm =
      bb::parse_machine("1RB0RA_1LC---_1RC1LD_0LE1RA_0LC0LE");
  bb::NgramParams params{bb::NgramVariant::Lru, 0, 2, 2, 10000};
  for (auto _ : state)
    benchmark::DoNotOptimize(bb::decide_ngram_cps(tm, params).status);
}
BENCHMARK(BM_NgramLru)->Unit(benchmark::kMillisecond);

void BM_RepwlFig15Left(benchmark::State& state) {
  bb::TransitionTable tm = bb::parse_machine("1RB1LA_1LA0RC_1LD1RC_---0LA");
  bb::RepwlParams params{4, 3, 320, 10000};
  for (auto _ : state)
    benchmark::DoNotOptimize(bb::decide_repwl(tm, params).status);
}
BENCHMARK(BM_RepwlFig15Left)->Unit(benchmark::kMillisecond);

}  // namespace
