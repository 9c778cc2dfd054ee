#include "coupled/sketching.hpp"
#include "coupled/testgen.hpp"

#include <benchmark/benchmark.h>

namespace {

using coupled::Index;

const coupled::testgen::MatrixPair& synthetic4_pair() {
  static const auto pair = coupled::testgen::synthetic4(500, 300, 200, 100, 1);
  return pair;
}

void BM_SimpleBasis(benchmark::State& state) {
  const auto& x = synthetic4_pair().X;
  const Index k = state.range(0);
  coupled::Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(coupled::simple_basis(x, k, rng));
}
BENCHMARK(BM_SimpleBasis)->Arg(10)->Arg(30)->Arg(100);

void BM_RsiBasis(benchmark::State& state) {
  const auto& x = synthetic4_pair().X;
  coupled::Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupled::rsi_basis(x, 30, static_cast<int>(state.range(0)), rng));
  }
}
BENCHMARK(BM_RsiBasis)->DenseRange(1, 5, 2);

void BM_RbkiBasis(benchmark::State& state) {
  const auto& x = synthetic4_pair().X;
  coupled::Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        coupled::rbki_basis(x, state.range(0), static_cast<int>(state.range(1)), rng));
  }
}
BENCHMARK(BM_RbkiBasis)->Args({1, 30})->Args({2, 15})->Args({30, 2});

void BM_JointBasis(benchmark::State& state) {
  const auto& pair = synthetic4_pair();
  coupled::Rng rng(7);
  const auto q1 = coupled::simple_basis(pair.X, state.range(0), rng);
  const auto q2 = coupled::simple_basis(pair.Y, state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(coupled::joint_basis(q1, q2));
}
BENCHMARK(BM_JointBasis)->Arg(10)->Arg(30)->Arg(100);

}  // namespace
