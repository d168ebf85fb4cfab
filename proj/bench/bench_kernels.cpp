// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "hetstream/distributions.hpp"
#include "hetstream/parallel.hpp"

using namespace hetstream;

namespace {

const std::vector<Scenario>& scenarios() {
  static const auto s = random_scenarios(200, 42, 256);
  return s;
}

const std::vector<OracleInstance>& instances() {
  static const auto i = random_oracle_instances(60, 42, 5, 5, OneToSome{2});
  return i;
}

const BandwidthProfile& h2() {
  static const auto p = expand_classes(skewed_h2(10000));
  return p;
}

void BM_SweepBoundsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_bounds_serial(scenarios(), 3));
}
void BM_SweepBoundsParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_bounds(scenarios(), 3));
}

void BM_GroupPeriodSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(smallest_group_period_serial(h2(), {0.5, 5}, OneToSome{4}));
}
void BM_GroupPeriodParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(smallest_group_period(h2(), {0.5, 5}, OneToSome{4}));
}

void BM_OracleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_oracle_serial(instances()));
}
void BM_OracleParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_oracle(instances()));
}

}  // namespace

BENCHMARK(BM_SweepBoundsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepBoundsParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GroupPeriodSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GroupPeriodParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
