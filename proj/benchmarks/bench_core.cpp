#include "bifractal/bernstein.hpp"
#include "bifractal/boxdim.hpp"
#include "bifractal/fif.hpp"
#include "bifractal/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace bifractal;

namespace {

Field2D wavy()
{
    return trig({{1.0, TrigFactor::Sin, 2.0, TrigFactor::Cos, 1.0}, {0.4, TrigFactor::Cos, 3.0, TrigFactor::Sin, 3.0}},
                kUnitSquare);
}

void BM_SolveSurface(benchmark::State& state)
{
    const auto R = static_cast<int>(state.range(0));
    const Field2D f = wavy();
    const FractalSurfaceSpec spec{f, bernstein_apply(f, {3, 3}), constant(0.5, kUnitSquare),
                                  make_net(kUnitSquare, 4, 4), R, 1e-10};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_fractal_surface(spec).iterations);
    }
    state.SetItemsProcessed(state.iterations() * (4 * R + 1) * (4 * R + 1));
}
BENCHMARK(BM_SolveSurface)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SolveNonUniform(benchmark::State& state)
{
    const Field2D f = wavy();
    const Net net = make_net(kUnitSquare, {0.0, 0.3, 0.55, 1.0}, {0.0, 0.6, 1.0});
    const FractalSurfaceSpec spec{f, bernstein_apply(f, {3, 3}), constant(0.5, kUnitSquare), net, 64, 1e-10};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_fractal_surface(spec).iterations);
    }
}
BENCHMARK(BM_SolveNonUniform)->Unit(benchmark::kMillisecond);

void BM_BoxCount(benchmark::State& state)
{
    const GridSample g = sample(lift_sum(shen_series({0.5, 4, Wave::Cosine, 1e-10}, kUnitInterval), kUnitInterval),
                                2049, 2049);
    const ScaleSchedule s = default_schedule(kUnitSquare);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dim_sample(g, s).slope);
    }
}
BENCHMARK(BM_BoxCount)->Unit(benchmark::kMillisecond);

void BM_BernsteinTabulate(benchmark::State& state)
{
    const auto d = static_cast<int>(state.range(0));
    const Field2D b = bernstein_apply(wavy(), {d, d});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample(b, 513, 513).values.data());
    }
}
BENCHMARK(BM_BernsteinTabulate)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
