#include "coupled/cmf.hpp"
#include "coupled/testgen.hpp"

#include <benchmark/benchmark.h>

namespace {

const coupled::testgen::MatrixPair& synthetic3_pair() {
  static const auto pair = coupled::testgen::synthetic3(2000, 250, 50, 1);
  return pair;
}

void BM_CmfBasic(benchmark::State& state) {
  const auto& p = synthetic3_pair();
  for (auto _ : state) benchmark::DoNotOptimize(coupled::cmf_basic(p.X, p.Y, 30));
}
BENCHMARK(BM_CmfBasic)->Unit(benchmark::kMillisecond);

void BM_CmfSimple(benchmark::State& state) {
  const auto& p = synthetic3_pair();
  const auto plan = coupled::SketchPlan::simple(30, 3);
  for (auto _ : state) benchmark::DoNotOptimize(coupled::cmf(p.X, p.Y, plan));
}
BENCHMARK(BM_CmfSimple)->Unit(benchmark::kMillisecond);

void BM_CmfRsi(benchmark::State& state) {
  const auto& p = synthetic3_pair();
  const auto plan = coupled::SketchPlan::rsi(30, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(coupled::cmf(p.X, p.Y, plan));
}
BENCHMARK(BM_CmfRsi)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CmfRbki(benchmark::State& state) {
  const auto& p = synthetic3_pair();
  const auto plan =
      coupled::SketchPlan::rbki(30, state.range(0), static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(coupled::cmf(p.X, p.Y, plan));
}
BENCHMARK(BM_CmfRbki)->Args({2, 26})->Args({30, 2})->Unit(benchmark::kMillisecond);

}  // namespace
