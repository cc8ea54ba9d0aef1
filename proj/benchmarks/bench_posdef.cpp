#include <benchmark/benchmark.h>

#include "kplus/posdef.hpp"

namespace {

void CpTestMember(benchmark::State& state) {
  const kplus::MetricKernel k = kplus::make_heinz(0.25);
  const kplus::TestConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(kplus::cp_test(k, cfg));
}
BENCHMARK(CpTestMember)->Unit(benchmark::kMillisecond);

void CpTestRefuted(benchmark::State& state) {
  const kplus::MetricKernel k = kplus::make_wyd(1.2);
  const kplus::TestConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(kplus::cp_test(k, cfg));
}
BENCHMARK(CpTestRefuted)->Unit(benchmark::kMillisecond);

void GramTrials(benchmark::State& state) {
  kplus::TestConfig cfg;
  cfg.gram_trials = static_cast<int>(state.range(0));
  const kplus::RealFn h = [](long double t) { return 1.0L / (std::cosh(t) + 2.0L); };
  for (auto _ : state) benchmark::DoNotOptimize(kplus::gram_test(h, cfg));
}
BENCHMARK(GramTrials)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
