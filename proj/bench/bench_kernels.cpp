// Parallel kernels against their serial references.
// The serial dilate and erode are brute force, so they only get small grids.

#include <benchmark/benchmark.h>

#include <random>

#include "adaclust/connectivity.hpp"
#include "adaclust/histogram.hpp"
#include "adaclust/synthetic.hpp"

using namespace adaclust;

namespace {

Dataset sample_2d(std::size_t n) { return sample(Strip2DSpec{make_theta_beta(2.0, 1.0, 0.1)}, n, 1); }

CellSet blob_set(std::size_t d, double delta) {
  const auto p = build_partition(Box(d, Interval{0.0, 1.0}), delta);
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.3);
  CellSet s(p);
  for (std::size_t id = 0; id < p->cell_count(); ++id) {
    if (coin(rng)) s.insert(id);
  }
  return s;
}

void BM_fit(benchmark::State& state) {
  const auto data = sample_2d(static_cast<std::size_t>(state.range(0)));
  const auto p = build_partition(sampling_box(2), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(fit(data, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_fit_serial(benchmark::State& state) {
  const auto data = sample_2d(static_cast<std::size_t>(state.range(0)));
  const auto p = build_partition(sampling_box(2), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(fit_serial(data, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_dilate(benchmark::State& state) {
  const auto s = blob_set(2, 1.0 / static_cast<double>(state.range(0)));
  const double r = 3.0 * s.partition().side(0);
  for (auto _ : state) benchmark::DoNotOptimize(dilate(s, r));
}

void BM_dilate_serial(benchmark::State& state) {
  const auto s = blob_set(2, 1.0 / static_cast<double>(state.range(0)));
  const double r = 3.0 * s.partition().side(0);
  for (auto _ : state) benchmark::DoNotOptimize(dilate_serial(s, r));
}

void BM_erode(benchmark::State& state) {
  const auto s = blob_set(2, 1.0 / static_cast<double>(state.range(0)));
  const double r = 3.0 * s.partition().side(0);
  for (auto _ : state) benchmark::DoNotOptimize(erode(s, r));
}

void BM_erode_serial(benchmark::State& state) {
  const auto s = blob_set(2, 1.0 / static_cast<double>(state.range(0)));
  const double r = 3.0 * s.partition().side(0);
  for (auto _ : state) benchmark::DoNotOptimize(erode_serial(s, r));
}

void BM_tau_components(benchmark::State& state) {
  const auto s = blob_set(2, 1.0 / static_cast<double>(state.range(0)));
  const double tau = 2.5 * s.partition().side(0);
  for (auto _ : state) benchmark::DoNotOptimize(tau_components(s, tau));
}

}  // namespace

BENCHMARK(BM_fit)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_fit_serial)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_dilate)->Arg(64)->Arg(200);
BENCHMARK(BM_dilate_serial)->Arg(32)->Arg(64);
BENCHMARK(BM_erode)->Arg(64)->Arg(200);
BENCHMARK(BM_erode_serial)->Arg(32)->Arg(64);
BENCHMARK(BM_tau_components)->Arg(64)->Arg(200);

BENCHMARK_MAIN();
