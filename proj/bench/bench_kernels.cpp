// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "fc/certify.hpp"
#include "fc/graphsim.hpp"

using namespace fc;

namespace {

const std::vector<SegmentPlan>& smoke_plan() {
    static const auto plan = resolve_manifest("smoke");
    return plan;
}

void BM_SweepSerial(benchmark::State& st) {
    Interval g = parse_decimal(sweep_gamma);
    for (auto _ : st) benchmark::DoNotOptimize(sweep_serial(smoke_plan(), g));
}

void BM_SweepParallel(benchmark::State& st) {
    Interval g = parse_decimal(sweep_gamma);
    for (auto _ : st) benchmark::DoNotOptimize(sweep_parallel(smoke_plan(), g, int(st.range(0))));
}

void BM_MonteCarloSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(first_moment_monte_carlo_serial(8, 0, 20000, 1));
}

void BM_MonteCarloParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(first_moment_monte_carlo(8, 0, 20000, 1, int(st.range(0))));
}

void BM_ExhaustiveSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(first_moment_exhaustive_serial(6, 0));
}

void BM_ExhaustiveParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(first_moment_exhaustive(6, 0));
}

void BM_RestartsSerial(benchmark::State& st) {
    static const Graph g = sample_gnp_half(300, 1);
    for (auto _ : st) benchmark::DoNotOptimize(local_search_max_margin_serial(g, 8, 1));
}

void BM_RestartsParallel(benchmark::State& st) {
    static const Graph g = sample_gnp_half(300, 1);
    for (auto _ : st) benchmark::DoNotOptimize(local_search_max_margin(g, 8, 1, int(st.range(0))));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExhaustiveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RestartsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RestartsParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
