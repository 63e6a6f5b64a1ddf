#include <benchmark/benchmark.h>

#include "m2s/energy_table.hpp"
#include "m2s/generate.hpp"
#include "m2s/instance.hpp"
#include "m2s/ising.hpp"
#include "m2s/rng.hpp"
#include "m2s/state_vector.hpp"

namespace {

void BuildEnergyTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    m2s::CounterRng rng(n);
    const m2s::Instance inst = m2s::generate_instance(n, 3 * n, rng);
    for (auto _ : state) {
        const m2s::EnergyTable table = m2s::build_energy_table(inst);
        benchmark::DoNotOptimize(table.ground_index);
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BuildEnergyTable)->DenseRange(8, 18, 2)->Complexity()
    ->Unit(benchmark::kMillisecond);

void BruteForce(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    m2s::CounterRng rng(n);
    const m2s::Instance inst = m2s::generate_instance(n, 3 * n, rng);
    for (auto _ : state) {
        const m2s::BruteForceResult bf = m2s::brute_force_optima(inst);
        benchmark::DoNotOptimize(bf.best_satisfied);
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(BruteForce)->DenseRange(8, 18, 2)->Complexity()
    ->Unit(benchmark::kMillisecond);

void DriverApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const m2s::StateVector psi = m2s::uniform_superposition(n);
    m2s::StateVector out;
    for (auto _ : state) {
        m2s::apply_driver(psi, out);
        benchmark::DoNotOptimize(out.amplitudes.data());
    }
    state.SetComplexityN(1 << n);
}
BENCHMARK(DriverApply)->DenseRange(8, 16, 2)->Complexity();

}  // namespace

BENCHMARK_MAIN();
