// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "c3b/critical.hpp"
#include "c3b/scan.hpp"

namespace {

void BM_ScanSerial(benchmark::State& st) {
    auto sys = c3b::preset("gravity-demo");
    for (auto _ : st) benchmark::DoNotOptimize(c3b::scan_disk_serial(sys, 10.0, static_cast<int>(st.range(0))));
}

void BM_ScanParallel(benchmark::State& st) {
    auto sys = c3b::preset("gravity-demo");
    for (auto _ : st) benchmark::DoNotOptimize(c3b::scan_disk(sys, 10.0, static_cast<int>(st.range(0))));
}

void BM_ContourSerial(benchmark::State& st) {
    auto sys = c3b::preset("helium");
    for (auto _ : st) benchmark::DoNotOptimize(c3b::contour_grid_serial(sys, 2, static_cast<int>(st.range(0)), false));
}

void BM_ContourParallel(benchmark::State& st) {
    auto sys = c3b::preset("helium");
    for (auto _ : st) benchmark::DoNotOptimize(c3b::contour_grid(sys, 2, static_cast<int>(st.range(0)), false));
}

void BM_ShapeSearchSerial(benchmark::State& st) {
    auto sys = c3b::preset("gravity-demo");
    for (auto _ : st) benchmark::DoNotOptimize(c3b::find_critical_shapes_serial(sys, 3));
}

void BM_ShapeSearchParallel(benchmark::State& st) {
    auto sys = c3b::preset("gravity-demo");
    for (auto _ : st) benchmark::DoNotOptimize(c3b::find_critical_shapes(sys, 3));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContourSerial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContourParallel)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShapeSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShapeSearchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
