#include <benchmark/benchmark.h>

#include "kplus/linalg.hpp"
#include "kplus/superop.hpp"

namespace {

void OmegaApply(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const kplus::DensityMatrix rho = kplus::random_density(d, 1);
  const kplus::HermitianMatrix x = kplus::random_traceless(d, 2);
  const kplus::SuperoperatorHandle h(kplus::make_heinz(0.3), rho);
  for (auto _ : state) benchmark::DoNotOptimize(h.apply_omega(x));
  state.SetComplexityN(d);
}
BENCHMARK(OmegaApply)->Arg(4)->Arg(16)->Arg(64)->Complexity();

void BkmForward(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const kplus::DensityMatrix rho = kplus::random_density(d, 3);
  const kplus::HermitianMatrix x = kplus::random_traceless(d, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kplus::bkm_quadrature(kplus::BkmDirection::forward, rho, x));
}
BENCHMARK(BkmForward)->Arg(4)->Arg(8);

}  // namespace
