#include <benchmark/benchmark.h>

#include "bb/pipeline.hpp"

namespace {

void BM_EnumerateS3(benchmark::State& state) {
  bb::Pipeline pipeline = bb::Pipeline::builtin("s3");
  for (auto _ : state) {
    bb::RunSummary sum = bb::run_value(3, 2, pipeline);
    benchmark::DoNotOptimize(sum.total);
  }
  state.SetItemsProcessed(state.iterations() * 5417);
}
BENCHMARK(BM_EnumerateS3)->Unit(benchmark::kMillisecond);

void BM_EnumerateS2x3(benchmark::State& state) {
  bb::Pipeline pipeline = bb::Pipeline::builtin("s2x3");
  for (auto _ : state) {
    bb::RunSummary sum = bb::run_value(2, 3, pipeline);
    benchmark::DoNotOptimize(sum.total);
  }
}
BENCHMARK(BM_EnumerateS2x3)->Unit(benchmark::kMillisecond);

}  // namespace
