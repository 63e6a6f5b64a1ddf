#include <benchmark/benchmark.h>

#include "m2s/generate.hpp"
#include "m2s/instance.hpp"
#include "m2s/mix_bandb.hpp"
#include "m2s/mixing.hpp"
#include "m2s/rng.hpp"
#include "m2s/two_sat.hpp"

namespace {

void MixBandBSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    m2s::CounterRng rng(n * 31 + 5);
    const m2s::Instance inst = m2s::generate_instance(n, 3 * n, rng);
    for (auto _ : state) {
        const m2s::ClassicalRunRecord record = m2s::mixbandb_solve(inst);
        benchmark::DoNotOptimize(record.n_calls);
    }
}
BENCHMARK(MixBandBSolve)->DenseRange(6, 14, 2)->Unit(benchmark::kMillisecond);

void MixingBound(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    m2s::CounterRng gen(n * 77 + 1);
    const m2s::Instance inst = m2s::generate_instance(n, 3 * n, gen);
    m2s::PartialAssignment partial(static_cast<std::size_t>(n), -1);
    int falsified = 0;
    const m2s::ResidualFormula residual =
        m2s::residual_under(inst, partial, falsified);
    m2s::CounterRng rng(9);
    for (auto _ : state) {
        const m2s::MixingBound bound = m2s::mixing_lower_bound(residual, rng);
        benchmark::DoNotOptimize(bound.bound);
    }
}
BENCHMARK(MixingBound)->DenseRange(8, 20, 4)->Unit(benchmark::kMicrosecond);

void TwoSatChain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    m2s::Instance inst;
    inst.n = n;
    for (int v = 1; v < n; ++v)
        inst.clauses.push_back(m2s::make_clause(-v, v + 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(m2s::two_sat_satisfiable(inst));
    }
    state.SetComplexityN(n);
}
BENCHMARK(TwoSatChain)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

}  // namespace

BENCHMARK_MAIN();
