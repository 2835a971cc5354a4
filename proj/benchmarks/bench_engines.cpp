#include <fiq/exact_engine.hpp>
#include <fiq/marginal_engine.hpp>
#include <fiq/oracle.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

fiq::Fiq random_input(std::size_t depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<fiq::Propensity> p;
  for (std::size_t k = 0; k < depth; ++k) {
    const long den = 2 + static_cast<long>(rng() % 30);
    p.push_back(fiq::make_propensity(1 + static_cast<long>(rng() % (den - 1)), den));
  }
  return fiq::Fiq(std::move(p), fiq::Tail::fair);
}

void BM_MarginalMul(benchmark::State& state) {
  const fiq::Fiq q = random_input(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fiq::mul_constant_marginal(q, 11, fiq::CarryModel::fair_tail_fixed_point));
  }
}
BENCHMARK(BM_MarginalMul)->Arg(8)->Arg(32)->Arg(128);

void BM_JointMul(benchmark::State& state) {
  const fiq::Fiq q = random_input(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fiq::joint_mul_constant(q, 11));
}
BENCHMARK(BM_JointMul)->Arg(4)->Arg(8)->Arg(12);

void BM_JointAdd(benchmark::State& state) {
  const fiq::Fiq q = random_input(static_cast<std::size_t>(state.range(0)), 3);
  const fiq::Fiq r = random_input(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(fiq::joint_add(q, r));
}
BENCHMARK(BM_JointAdd)->Arg(4)->Arg(6)->Arg(8);

void BM_TruncationMul(benchmark::State& state) {
  const fiq::Fiq q = random_input(8, 5);
  const auto extension = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fiq::oracle::truncation_law_mul(q, 11, std::nullopt, extension));
}
BENCHMARK(BM_TruncationMul)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const fiq::Fiq q = random_input(8, 6);
  fiq::oracle::OracleConfig config;
  config.sample_count = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fiq::oracle::sample_law(q, fiq::oracle::MulOp{11}, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
