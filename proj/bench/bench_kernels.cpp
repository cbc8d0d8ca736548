// Tensor fits: serial and parallel line kernels against the dense reference.

#include "hqi/qi_tensor.hpp"
#include "hqi/reference.hpp"
#include "hqi/test_functions.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace hqi;

GridSample2D franke_grid(int N)
{
    const auto& f = builtin_function("franke");
    GridSample2D g;
    g.axes = {linspace(0, 1, N + 1), linspace(0, 1, N + 1)};
    for(double y : g.axes[1])
        for(double x : g.axes[0])
            g.values.push_back(f(x, y));
    return g;
}

GridSample3D ball_grid(int N)
{
    const auto& f = builtin_function("ball3d");
    GridSample3D g;
    g.axes = {linspace(0, 1, N + 1), linspace(0, 1, N + 1), linspace(0, 1, N + 1)};
    for(double z : g.axes[2])
        for(double y : g.axes[1])
            for(double x : g.axes[0])
                g.values.push_back(f(x, y, z));
    return g;
}

void surface(benchmark::State& st, Exec exec)
{
    const auto g = franke_grid(static_cast<int>(st.range(0)));
    for(auto _ : st)
        benchmark::DoNotOptimize(qi2d_approx(g, {3, 3}, {0, 0}, exec));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.values.size()));
}

void surface_dense(benchmark::State& st)
{
    const auto g = franke_grid(static_cast<int>(st.range(0)));
    for(auto _ : st)
        benchmark::DoNotOptimize(reference::qi2d_approx(g, {3, 3}, {0, 0}));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.values.size()));
}

void surface_hermite(benchmark::State& st, Exec exec)
{
    const auto& f = builtin_function("franke");
    auto g = franke_grid(static_cast<int>(st.range(0)));
    for(double y : g.axes[1])
        for(double x : g.axes[0]) {
            g.fx.push_back(f.value({x, y, 0}, {1, 0, 0}));
            g.fy.push_back(f.value({x, y, 0}, {0, 1, 0}));
            g.fxy.push_back(f.value({x, y, 0}, {1, 1, 0}));
        }
    for(auto _ : st)
        benchmark::DoNotOptimize(qi2d_hermite(g, {3, 3}, exec));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.values.size()));
}

void volume(benchmark::State& st, Exec exec)
{
    const auto g = ball_grid(static_cast<int>(st.range(0)));
    for(auto _ : st)
        benchmark::DoNotOptimize(qi3d_approx(g, {3, 3, 3}, {0, 0, 0}, exec));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.values.size()));
}

void volume_nested(benchmark::State& st)
{
    const auto g = ball_grid(static_cast<int>(st.range(0)));
    for(auto _ : st)
        benchmark::DoNotOptimize(reference::qi3d_nested(g, {3, 3, 3}, {0, 0, 0}));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.values.size()));
}

}  // namespace

BENCHMARK_CAPTURE(surface, serial, hqi::Exec::serial)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(surface, parallel, hqi::Exec::parallel)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(surface_dense)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(surface_hermite, serial, hqi::Exec::serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(surface_hermite, parallel, hqi::Exec::parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(volume, serial, hqi::Exec::serial)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(volume, parallel, hqi::Exec::parallel)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(volume_nested)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
