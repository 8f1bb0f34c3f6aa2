#include <benchmark/benchmark.h>

#include <cmath>

#include "pdc/fockstate.hpp"
#include "pdc/stokes.hpp"

using namespace pdc;

namespace {

CrystalConfig config(double sigma = 2.0) {
  CrystalConfig cfg;
  cfg.sigma = sigma;
  return cfg;
}

StokesEngine engine(double fwhm_nm) {
  CrystalConfig cfg = config();
  const DerivedScales s = derive_scales(cfg, 0.1);
  FilterSpec filter;
  filter.kind = FilterSpec::Kind::step;
  filter.fwhm_lambda = fwhm_nm * 1e-9;
  CompensationSpec comp;
  comp.enabled = true;
  comp.length_ratio = optimal_compensation_length(cfg.sigma, s.lc) / s.lc;
  return StokesEngine(cfg, s, filter, comp);
}

void bm_gain_at(benchmark::State& state) {
  const DerivedScales s = derive_scales(config(), 0.1);
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    benchmark::DoNotOptimize(
        gain_at(4.0 * s.q0, x * s.q0, 0.3 / s.tau_coh, 2.0, s));
  }
}
BENCHMARK(bm_gain_at);

void bm_derive_scales(benchmark::State& state) {
  const CrystalConfig cfg = config();
  for (auto _ : state) benchmark::DoNotOptimize(derive_scales(cfg, 0.1));
}
BENCHMARK(bm_derive_scales);

void bm_stokes_point(benchmark::State& state) {
  StokesEngine eng = engine(double(state.range(0)));
  const double x = std::sqrt(eng.scales().delta0);
  for (auto _ : state) benchmark::DoNotOptimize(eng.point(x, 0.0));
  state.SetLabel("fwhm_nm=" + std::to_string(state.range(0)));
}
BENCHMARK(bm_stokes_point)->Arg(1)->Arg(8)->Arg(60);

void bm_noise_map_row(benchmark::State& state) {
  StokesEngine eng = engine(8.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(eng.noise_map(MapKind::s2diff, 32, 1, 6.5));
}
BENCHMARK(bm_noise_map_row);

void bm_pair_state(benchmark::State& state) {
  const DerivedScales s = derive_scales(config(), 0.1);
  const double x = std::sqrt(s.delta0) * s.q0;
  const GainSample f = gain_at(x, 0.0, 0.0, 1.0, s);
  const GainSample r = gain_at(-x, 0.0, 0.0, 1.0, s);
  const ModePairGains g = ModePairGains::from_samples(f, r);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_pair_state(g, int(state.range(0))));
}
BENCHMARK(bm_pair_state)->Arg(20)->Arg(60);

void bm_stokes_moments(benchmark::State& state) {
  const DerivedScales s = derive_scales(config(), 0.1);
  const double x = std::sqrt(s.delta0) * s.q0;
  const GainSample f = gain_at(x, 0.0, 0.0, 1.0, s);
  const GainSample r = gain_at(-x, 0.0, 0.0, 1.0, s);
  const TruncatedPairState st =
      build_pair_state(ModePairGains::from_samples(f, r), 40);
  for (auto _ : state) benchmark::DoNotOptimize(stokes_moments(st));
}
BENCHMARK(bm_stokes_moments);

}  // namespace

BENCHMARK_MAIN();
