#include "mono/bodies.hpp"
#include "mono/equilibria.hpp"
#include "mono/gomboc.hpp"
#include "mono/integrate.hpp"

#include <benchmark/benchmark.h>

using namespace mono;

namespace {

gomboc::GombocParams sphere_params(double c, double d) {
  gomboc::GombocParams p;
  p.c = c;
  p.d = d;
  return p;
}

void BM_RadialFunction(benchmark::State& state) {
  const gomboc::GombocParams p = sphere_params(0.3, 0.02);
  double th = -1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gomboc::radial_R(p, th, 0.7));
    th = th > 1.5 ? -1.5 : th + 1e-3;
  }
}
BENCHMARK(BM_RadialFunction);

void BM_FirstMoment(benchmark::State& state) {
  const RadialBody body = gomboc::build_body(sphere_params(0.3, 0.02));
  QuadratureSpec spec;
  spec.n_theta = static_cast<int>(state.range(0));
  spec.n_phi = 2 * spec.n_theta;
  const auto ray = state.range(1) == 0 ? RayIntegral::ClosedForm : RayIntegral::Numeric;
  for (auto _ : state) benchmark::DoNotOptimize(first_moment_M3_value(body, spec, ray));
}
BENCHMARK(BM_FirstMoment)->ArgsProduct({{32, 64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Centroid(benchmark::State& state) {
  const RadialBody body = gomboc::build_body(sphere_params(0.3, 0.02));
  for (auto _ : state) benchmark::DoNotOptimize(centroid(body));
}
BENCHMARK(BM_Centroid)->Unit(benchmark::kMillisecond);

void BM_Centering(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_centering_c(0.02, 1.0, SpaceKind::spherical(3)));
}
BENCHMARK(BM_Centering)->Unit(benchmark::kMillisecond);

void BM_Census3D(benchmark::State& state) {
  const RadialBody body = perturbed_ellipsoid_3d({2, 1.5, 1}, 1, 0.04);
  const ChartPoint ref = centroid(body);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_equilibria(body, ref, {static_cast<int>(state.range(0))}));
  }
}
BENCHMARK(BM_Census3D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Census2D(benchmark::State& state) {
  const RadialBody body = random_convex_2d(SpaceKind::hyperbolic(2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(count_equilibria_2d(body));
}
BENCHMARK(BM_Census2D)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
