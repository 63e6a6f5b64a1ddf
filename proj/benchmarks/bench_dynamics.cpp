#include <benchmark/benchmark.h>

#include "m2s/dynamics.hpp"
#include "m2s/energy_table.hpp"
#include "m2s/generate.hpp"
#include "m2s/rng.hpp"

namespace {

m2s::Instance fixed_instance(int n) {
    m2s::CounterRng rng(n * 1000 + 7);
    for (;;) {
        const m2s::Instance raw = m2s::generate_instance(n, 3 * n, rng);
        const m2s::BruteForceResult bf = m2s::brute_force_optima(raw);
        if (bf.optima.size() == 1)
            return m2s::canonicalize_to_zero(raw, bf.optima.front());
    }
}

void QwWindowAverage(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const m2s::Instance inst = fixed_instance(n);
    const m2s::EnergyTable table = m2s::build_energy_table(inst);
    m2s::WalkConfig config;
    config.gamma = 0.8;
    config.window = {0.0, 10.0};
    m2s::EvolveOptions opts;
    for (auto _ : state) {
        const m2s::QwResult result =
            m2s::qw_average_probability(inst, table, config, opts);
        benchmark::DoNotOptimize(result.p_avg);
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(QwWindowAverage)->DenseRange(5, 10)->Complexity()
    ->Unit(benchmark::kMillisecond);

void AnnealProbability(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const m2s::Instance inst = fixed_instance(n);
    const m2s::EnergyTable table = m2s::build_energy_table(inst);
    m2s::EvolveOptions opts;
    for (auto _ : state) {
        const double p =
            m2s::aqc_probability(inst, table, m2s::AnnealSchedule{20.0}, opts);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(AnnealProbability)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void InfiniteTimeAverage(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const m2s::EnergyTable table = m2s::build_energy_table(fixed_instance(n));
    for (auto _ : state) {
        const double p = m2s::qw_infinite_time_average(table, 0.8);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(InfiniteTimeAverage)->DenseRange(5, 10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
