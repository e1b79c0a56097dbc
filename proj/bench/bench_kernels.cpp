// OpenMP paths against the serial reference: forecast convolution, grid DTFT
// and causal kernel construction.

#include "bandpredict/kernels.hpp"
#include "bandpredict/predictor.hpp"
#include "bandpredict/reference.hpp"
#include "bandpredict/signals.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace bandpredict;

namespace {

constexpr double kPi = std::numbers::pi;

template <SupportedReal Real>
BasicSignal<Real> bench_signal(std::size_t length) {
  return gen_band_signal<Real>({.omega = kPi / 3, .mode = Band::low, .length = length, .seed = 1},
                               default_synthesis_grid(length));
}

template <SupportedReal Real>
BasicSignal<Real> bench_taps(std::size_t n, std::size_t m) {
  return causal_kernel<Real>(FirstOrderKernel::k1(2.0), {.omega = kPi / 3, .gamma = -8.0, .n = n, .m = m}).taps;
}

template <SupportedReal Real, bool Parallel>
void BM_forecast(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto x = bench_signal<Real>(4 * m);
  const auto taps = bench_taps<Real>(8 * m, m);
  const TimeWindow w{static_cast<std::int64_t>(m), static_cast<std::int64_t>(3 * m)};
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(forecast_on(x, taps, w));
    else
      benchmark::DoNotOptimize(serial::forecast(x, taps, w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size() * m));
}

template <SupportedReal Real, bool Parallel>
void BM_dtft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = bench_signal<Real>(n / 4);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(dtft_on_grid(x, n));
    else
      benchmark::DoNotOptimize(serial::dtft(x, n));
  }
}

template <SupportedReal Real>
void BM_causal_kernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bench_taps<Real>(n, n / 8));
}

}  // namespace

BENCHMARK(BM_forecast<double, true>)->Name("forecast/double/omp")->Arg(512)->Arg(4096);
BENCHMARK(BM_forecast<double, false>)->Name("forecast/double/serial")->Arg(512)->Arg(4096);
BENCHMARK(BM_forecast<Extended, true>)->Name("forecast/extended/omp")->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_forecast<Extended, false>)->Name("forecast/extended/serial")->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dtft<double, true>)->Name("dtft/double/omp")->Arg(1024)->Arg(8192);
BENCHMARK(BM_dtft<double, false>)->Name("dtft/double/serial")->Arg(1024)->Arg(8192);
BENCHMARK(BM_causal_kernel<double>)->Name("causal_kernel/double")->Arg(4096)->Arg(32768);
BENCHMARK(BM_causal_kernel<Extended>)->Name("causal_kernel/extended")->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
