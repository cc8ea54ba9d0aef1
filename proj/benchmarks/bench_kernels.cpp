#include <benchmark/benchmark.h>

#include "kplus/kernels.hpp"

namespace {

void EvalWyd(benchmark::State& state) {
  const kplus::MetricKernel k = kplus::make_wyd(0.73);
  double x = 0.017;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.eval(x));
    x = x < 1e5 ? x * 1.37 : 0.017;
  }
}
BENCHMARK(EvalWyd);

void EvalStolarskyLongDouble(benchmark::State& state) {
  const kplus::MetricKernel k = kplus::make_stolarsky(-1.3);
  long double x = 0.017L;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.eval_ld(x));
    x = x < 1e5L ? x * 1.37L : 0.017L;
  }
}
BENCHMARK(EvalStolarskyLongDouble);

void CheckClassK(benchmark::State& state) {
  const kplus::MetricKernel k = kplus::make_heinz(0.31);
  for (auto _ : state)
    benchmark::DoNotOptimize(kplus::check_class_K(k, static_cast<int>(state.range(0))));
}
BENCHMARK(CheckClassK)->Arg(8)->Arg(32);

}  // namespace
