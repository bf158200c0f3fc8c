#include <benchmark/benchmark.h>

#include <vector>

#include "wavebound/bounds.hpp"
#include "wavebound/estimator.hpp"
#include "wavebound/gp.hpp"
#include "wavebound/simulation.hpp"
#include "wavebound/specfun.hpp"
#include "wavebound/spectrum.hpp"

using namespace wavebound;

static void BM_erfc(benchmark::State& state) {
  double z = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wavebound::erfc(z));
    z += 1e-3;
    if (z > 5.0) z = -5.0;
  }
}
BENCHMARK(BM_erfc);

static void BM_digamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(digamma(x));
    x += 0.01;
    if (x > 50.0) x = 0.1;
  }
}
BENCHMARK(BM_digamma);

static void BM_autocovariance(benchmark::State& state) {
  PowerLawSpectrum s(static_cast<double>(state.range(0)) / 2.0, 1.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(autocovariance(s, 3.7));
}
BENCHMARK(BM_autocovariance)->Arg(3)->Arg(4)->Arg(6);

static void BM_z_numeric_oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(z_numeric_oracle(1.3, 0.7, 3.14159));
}
BENCHMARK(BM_z_numeric_oracle);

static void BM_sample_waveform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PowerLawSpectrum s(2.0, 1.0, 0.01);
  TimeGrid grid{0.0, 1e-3, n};
  SynthesisConfig cfg = commensurate_synthesis(grid.dt, n, 1);
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_waveform(s, grid, cfg, stream++).values.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_sample_waveform)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

static void BM_sample_waveform_direct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PowerLawSpectrum s(2.0, 1.0, 0.01);
  TimeGrid grid{0.0, 1e-3, n};
  SynthesisConfig cfg = commensurate_synthesis(grid.dt, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_waveform_direct(s, grid, cfg, 0).values.data());
}
BENCHMARK(BM_sample_waveform_direct)->Arg(1 << 10)->Arg(1 << 12);

static void BM_interpolate(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  std::vector<double> samples(4 * M + 16);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = 1e-3 * static_cast<double>(i % 97);
  InterpolationOptions opts{M, Taper::tukey};
  double t = 2.0 * M + 0.37;
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_samples(samples, 0.0, 1.0, t, opts));
}
BENCHMARK(BM_interpolate)->Arg(64)->Arg(512)->Arg(2048);

static void BM_simulation_trial(benchmark::State& state) {
  SimulationConfig c;
  c.flux = 1e3;
  c.trials = 1;
  c.mode = Mode::periodic;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(c).budget.total_modulo);
    ++c.seed;
  }
}
BENCHMARK(BM_simulation_trial)->Unit(benchmark::kMillisecond);

static void BM_verification_constants(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lambda());
    benchmark::DoNotOptimize(airy_root_magnitude());
  }
}
BENCHMARK(BM_verification_constants);
BENCHMARK_MAIN();
