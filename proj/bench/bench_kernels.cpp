// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "garo/harness.hpp"
#include "garo/oscillation.hpp"
#include "garo/packing.hpp"

using namespace garo;

namespace {

GridFunction input(int dim, int N) { return generate(parse_generator_spec("random_pc", dim, N, 1.0, 7)).f; }

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

void BM_CubeStats1D(benchmark::State& state) {
    const auto f = input(1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cube_stats(f, CubeFamily::all_grid, exec_of(state)));
}
BENCHMARK(BM_CubeStats1D)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CubeStats2D(benchmark::State& state) {
    const auto f = input(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cube_stats(f, CubeFamily::all_grid, exec_of(state)));
}
BENCHMARK(BM_CubeStats2D)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SharpMaximal2D(benchmark::State& state) {
    const auto f = input(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sharp_maximal(f, 0.5, CubeFamily::all_grid, exec_of(state)));
}
BENCHMARK(BM_SharpMaximal2D)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GaroEngine1D(benchmark::State& state) {
    const auto f = input(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        PackingEngine eng(f, NormFamily::all_grid, exec_of(state));
        benchmark::DoNotOptimize(eng.garo(2.0).value);
    }
}
BENCHMARK(BM_GaroEngine1D)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GaroEngineDyadic2D(benchmark::State& state) {
    const auto f = input(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        PackingEngine eng(f, NormFamily::dyadic, exec_of(state));
        benchmark::DoNotOptimize(eng.garo(3.0).value);
    }
}
BENCHMARK(BM_GaroEngineDyadic2D)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
