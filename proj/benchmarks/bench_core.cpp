// Microbenchmarks for the hot paths: per-mode propagator assembly in each
// parameter regime, the dense sine transform, normal generation, step-table
// construction, and the full coupled exponential-Euler step.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "skrates/dynamics.hpp"
#include "skrates/noise.hpp"
#include "skrates/propagators.hpp"
#include "skrates/rng.hpp"
#include "skrates/spectral.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// One (eps, lambda, t) point per branch of the propagator evaluation:
// oscillatory (disc < 0), overdamped (disc > 0), the series window near
// disc == 0, and a deeply decayed point exercising the log-scale guard.
void bm_wave_mode_matrix(benchmark::State& state) {
  struct Pt {
    double eps, lambda, t;
  };
  static const Pt pts[] = {
      {0.5, 64.0 * kPi * kPi, 0.1},  // oscillatory
      {0.05, kPi * kPi, 0.1},        // overdamped
      {0.5, 1.0, 1.0},               // critical / series window
      {0.01, 4096.0 * kPi * kPi, 1.0},  // deep decay
  };
  const Pt p = pts[state.range(0)];
  for (auto _ : state)
    benchmark::DoNotOptimize(skr::wave_mode_matrix(p.eps, p.lambda, p.t));
}
BENCHMARK(bm_wave_mode_matrix)->DenseRange(0, 3)->Name("wave_mode_matrix");

void bm_sine_transform_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  skr::SineTransform dst(n, 4 * n);
  std::vector<double> c(n), w(4 * n), back(n);
  for (int i = 0; i < n; ++i) c[i] = std::sin(0.7 * (i + 1));
  for (auto _ : state) {
    dst.synthesize(c.data(), w.data());
    dst.analyze(w.data(), back.data());
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_sine_transform_roundtrip)
    ->Arg(32)
    ->Arg(64)
    ->Arg(128)
    ->Name("sine_transform_roundtrip");

void bm_gaussian_draw(benchmark::State& state) {
  skr::CounterRng rng(1, 0, skr::StreamPurpose::scratch);
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rng.gaussian(k++));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_gaussian_draw)->Name("gaussian_draw");

void bm_build_step_tables(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto basis = skr::SpectralBasis::dirichlet(n);
  skr::NoiseSpectrum spectrum =
      skr::make_spectrum(skr::NoiseKind::white, 0.0, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        skr::build_step_tables(basis, spectrum, 0.125, 0.25 / 512));
}
BENCHMARK(bm_build_step_tables)->Arg(64)->Name("build_step_tables");

// Full coupled trajectory (both systems, shared noise) on the default
// experiment shape; items processed counts exponential-Euler steps.
void bm_coupled_simulation(benchmark::State& state) {
  const int n = 64, steps = 32;
  skr::SimProblem prob;
  prob.basis = skr::SpectralBasis::dirichlet(n);
  prob.spectrum = skr::make_spectrum(skr::NoiseKind::white, 0.0, n);
  prob.f = {skr::NonlinKind::nemytskii_sine, 1.0};
  prob.u0.assign(n, 0.0);
  prob.v0.assign(n, 0.0);
  prob.u0[0] = 1.0 / std::numbers::sqrt2;
  prob.t_final = steps * (0.25 / 512);
  prob.h = 0.25 / 512;
  prob.observations = 1;
  prob.seed = 7;
  skr::StepTables tables =
      skr::build_step_tables(prob.basis, prob.spectrum, 0.125, prob.h);
  skr::Nonlinearity f(prob.f, prob.basis);
  std::uint64_t replica = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(skr::simulate_coupled(prob, tables, f, replica++));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(bm_coupled_simulation)->Name("coupled_simulation_32steps");

}  // namespace

BENCHMARK_MAIN();
