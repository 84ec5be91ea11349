#include <benchmark/benchmark.h>

#include "magcouple/oracle/oracle.hpp"
#include "magcouple/sweep/sweep.hpp"

using namespace magcouple;

namespace {

SystemTemplate combined_system()
{
    return canonical_template({"py", 0.0, 0.03, 0.01}, kPermalloy, {"r", 5.0, 0.01, 0.04}, {"yig", 0.0, 0.005, 0.01},
                              kYig, 0.2, 0.21);
}

// Square grid with state.range(0) points per axis.
void map_args(benchmark::internal::Benchmark* b)
{
    for (int n : {64, 128, 256})
        b->Arg(n);
}

void BM_MapSerial(benchmark::State& state)
{
    const SystemTemplate t = combined_system();
    const auto fields = linspace(20, 320, static_cast<std::size_t>(state.range(0)));
    const auto freqs = linspace(4, 6, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_map_serial(t, fields, freqs));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_MapSerial)->Apply(map_args)->Unit(benchmark::kMillisecond);

void BM_MapParallel(benchmark::State& state)
{
    const SystemTemplate t = combined_system();
    const auto fields = linspace(20, 320, static_cast<std::size_t>(state.range(0)));
    const auto freqs = linspace(4, 6, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_map(t, fields, freqs));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_MapParallel)->Apply(map_args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BranchesSerial(benchmark::State& state)
{
    const SystemTemplate t = combined_system();
    const auto fields = linspace(20, 320, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_branches_serial(t, fields));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BranchesSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BranchesParallel(benchmark::State& state)
{
    const SystemTemplate t = combined_system();
    const auto fields = linspace(20, 320, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_branches(t, fields));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BranchesParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SynthMap(benchmark::State& state)
{
    const SystemTemplate t = combined_system();
    const auto fields = linspace(20, 320, 128);
    const auto freqs = linspace(4, 6, 128);
    for (auto _ : state)
        benchmark::DoNotOptimize(synth_map(t, fields, freqs, {0.01, 1}));
}
BENCHMARK(BM_SynthMap)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
