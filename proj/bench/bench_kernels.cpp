// Serial reference kernels against their OpenMP counterparts. The Exec
// argument is the benchmark's second range value: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "digitlaw/cramer.hpp"
#include "digitlaw/primes.hpp"
#include "digitlaw/sieve.hpp"

using namespace digitlaw;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::kSerial : Exec::kParallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel x" + std::to_string(omp_get_max_threads()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CountPrimes(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_primes(2, n + 1, exec_of(state)));
  label(state);
}

void BM_PrimeHistogram(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prime_digit_histogram(2, n + 1, 2, exec_of(state)));
  label(state);
}

void BM_PrimePiTable(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    PrimePi pi(n, exec_of(state));
    benchmark::DoNotOptimize(pi.at_most(static_cast<double>(n)));
  }
  label(state);
}

void BM_CramerCount(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cramer_count(n, 1, exec_of(state)));
  label(state);
}

void BM_CramerHistogram(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cramer_digit_histogram(n, 1, 1, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_CountPrimes)->ArgsProduct({{10'000'000, 100'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimeHistogram)->ArgsProduct({{10'000'000, 100'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimePiTable)->ArgsProduct({{10'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CramerCount)->ArgsProduct({{10'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CramerHistogram)->ArgsProduct({{10'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
