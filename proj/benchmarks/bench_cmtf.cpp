#include "coupled/cmtf.hpp"
#include "coupled/testgen.hpp"

#include <benchmark/benchmark.h>

namespace {

const coupled::testgen::TensorMatrixPair& planted() {
  static const auto inst = coupled::testgen::planted_cp(100, 50, 20, 30, 3, 1);
  return inst;
}

const coupled::testgen::TensorMatrixPair& tensor_case() {
  static const auto inst = coupled::testgen::tensor_test(60, 5, 2.0, 5, 10, 7, 1);
  return inst;
}

void BM_TuckerBasic(benchmark::State& state) {
  const auto& t = tensor_case();
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupled::cmtf_tucker(t.T, t.Y, coupled::SketchPlan::basic(10)));
  }
}
BENCHMARK(BM_TuckerBasic)->Unit(benchmark::kMillisecond);

void BM_TuckerRsi(benchmark::State& state) {
  const auto& t = tensor_case();
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupled::cmtf_tucker(t.T, t.Y, coupled::SketchPlan::rsi(10, 5, 3)));
  }
}
BENCHMARK(BM_TuckerRsi)->Unit(benchmark::kMillisecond);

void BM_CpAls(benchmark::State& state) {
  const auto& t = planted();
  coupled::AlsOptions opts;
  opts.init_seed = 5;
  opts.max_iters = static_cast<int>(state.range(0));
  opts.rel_tol = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(coupled::cmtf_cp_als(t.T, t.Y, 3, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CpAls)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_CpAlsRandomized(benchmark::State& state) {
  const auto& t = planted();
  coupled::AlsOptions opts;
  opts.init_seed = 5;
  opts.max_iters = 50;
  opts.rel_tol = 0.0;
  const auto plan = coupled::SketchPlan::rsi(3, 2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupled::cmtf_cp_als_randomized(t.T, t.Y, plan, opts));
  }
}
BENCHMARK(BM_CpAlsRandomized)->Unit(benchmark::kMillisecond);

}  // namespace
