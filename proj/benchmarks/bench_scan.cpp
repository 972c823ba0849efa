#include <benchmark/benchmark.h>

#include <vector>

#include "msrank/calibrate.hpp"
#include "msrank/gaussian.hpp"
#include "msrank/ranks.hpp"
#include "msrank/rng.hpp"
#include "msrank/simulate.hpp"
#include "msrank/statistic.hpp"

using namespace msrank;

namespace {

Dataset make_data(std::size_t n) {
  return gen_dataset(n, DesignDensity::uniform(), SignalSpec::zero(),
                     NoiseSpec::of(ErrorLaw::student_t(3)), 4242);
}

void BM_BuildCoefficientTable(benchmark::State& state) {
  const Dataset d = make_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    CoefficientTable t(d, Kernel::epanechnikov(), WindowPolicy::exhaustive());
    benchmark::DoNotOptimize(t.denominator(0));
  }
}
BENCHMARK(BM_BuildCoefficientTable)->Arg(50)->Arg(100)->Arg(200);

void BM_ScanMax(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Dataset d = make_data(n);
  const CoefficientTable t(d, Kernel::epanechnikov(), WindowPolicy::exhaustive());
  std::vector<double> signs(n);
  Rng rng(7, 0);
  rng.fill_signs(signs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_max(t, signs));
  }
}
BENCHMARK(BM_ScanMax)->Arg(50)->Arg(100)->Arg(200);

void BM_ScanMaxDyadic(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Dataset d = make_data(n);
  const CoefficientTable t(d, Kernel::epanechnikov(), WindowPolicy::dyadic());
  std::vector<double> signs(n);
  Rng rng(7, 0);
  rng.fill_signs(signs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_max(t, signs));
  }
}
BENCHMARK(BM_ScanMaxDyadic)->Arg(200)->Arg(1000);

void BM_SimulateNull(benchmark::State& state) {
  const Dataset d = make_data(100);
  const CoefficientTable t(d, Kernel::epanechnikov(), WindowPolicy::exhaustive());
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_null(t, 999, 11, threads));
  }
}
BENCHMARK(BM_SimulateNull)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_RankStream(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Dataset d = make_data(n);
  const std::vector<double> absy = d.abs_y();
  const AbsOrderIndex order(absy);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      WindowRankStream s(order, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        s.extend();
        acc += s.midranks().back();
      }
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RankStream)->Arg(100)->Arg(200);

void BM_GaussianCalibrate(benchmark::State& state) {
  const WeightTable t(gen_design(100, DesignDensity::uniform()),
                      Kernel::epanechnikov(), WindowPolicy::exhaustive());
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_calibrate(t, 999, 0.1, 3, 1));
  }
}
BENCHMARK(BM_GaussianCalibrate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
