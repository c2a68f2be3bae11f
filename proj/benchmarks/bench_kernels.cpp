#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "specrk/butcher.hpp"
#include "specrk/physics.hpp"
#include "specrk/problems.hpp"
#include "specrk/runge_kutta.hpp"
#include "specrk/spectral_ops.hpp"

using namespace specrk;

namespace {

GridSpec cube(const benchmark::State& state) { return GridSpec::cube(3, static_cast<int>(state.range(0))); }

void BM_NavierStokesRhs(benchmark::State& state) {
  const GridSpec g = cube(state);
  PhysParams p;
  p.reynolds = 280.0;
  const FlowState u = taylor_green_init(g);
  FlowRhs rhs(g, p, false);
  std::vector<Complex> f(u.fields.size());
  for (auto _ : state) {
    rhs(u.fields.data(), f);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.physical_size()));
}
BENCHMARK(BM_NavierStokesRhs)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BoussinesqRhs(benchmark::State& state) {
  const GridSpec g = rayleigh_taylor_grid(2, static_cast<int>(state.range(0)), 4 * static_cast<int>(state.range(0)));
  PhysParams p;
  p.reynolds = 1600.0;
  const FlowState s = rayleigh_taylor_init(g, RayleighTaylorSpec{});
  FlowRhs rhs(g, p, true);
  std::vector<Complex> f(s.fields.size());
  for (auto _ : state) {
    rhs(s.fields.data(), f);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_BoussinesqRhs)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DealiasedCrossProduct(benchmark::State& state) {
  const GridSpec g = cube(state);
  std::mt19937_64 rng(1);
  const FlowState u = hit_init(g, HitSpec{3.0, 0.125, 1.0}, rng);
  const SpectralField& v = u.fields;
  Dealiaser d(g);
  const PointwiseKernel cross = cross_product_kernel(3);
  const SpectralField* in[] = {&v, &v};
  for (auto _ : state) {
    SpectralField out = d.product(in, cross, 3);
    benchmark::DoNotOptimize(out.data().data());
  }
}
BENCHMARK(BM_DealiasedCrossProduct)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_RungeKuttaStep(benchmark::State& state, const char* method) {
  const GridSpec g = GridSpec::cube(3, 32);
  PhysParams p;
  p.reynolds = 280.0;
  const FlowState u = taylor_green_init(g);
  FlowRhs rhs(g, p, false);
  const OdeRhs f = [&](double, std::span<const Complex> y, std::span<Complex> dy) { rhs(y, dy); };
  const ButcherPair pair = make_pair(method);
  for (auto _ : state) {
    auto r = rk_step(f, u.fields.data(), 0.0, 1e-2, pair);
    benchmark::DoNotOptimize(r.y_new.data());
  }
}
BENCHMARK_CAPTURE(BM_RungeKuttaStep, rk4, "rk4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RungeKuttaStep, bs5, "bs5")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RungeKuttaStep, dp5, "dp5")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
