#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "m2s/errors.hpp"
#include "m2s/generate.hpp"
#include "m2s/instance.hpp"
#include "m2s/mix_bandb.hpp"
#include "m2s/mixing.hpp"
#include "m2s/rng.hpp"
#include "m2s/two_sat.hpp"
#include "support/fixtures.hpp"
#include "support/logic_oracle.hpp"

using namespace m2s;

TEST_CASE("worked example is unsatisfiable") {
    CHECK_FALSE(two_sat_satisfiable(test::worked_example()));
}

TEST_CASE("single clause is satisfiable") {
    Instance inst;
    inst.n = 2;
    inst.clauses = {make_clause(1, 2)};
    CHECK(two_sat_satisfiable(inst));
}

TEST_CASE("2-sat decision agrees with brute force on generated instances") {
    for (int n : {4, 6, 8, 10}) {
        const GeneratedDataset ds = generate_dataset(n, 120, 19);
        for (const Instance& inst : ds.instances) {
            const bool oracle = test::oracle_best_satisfied(inst) == inst.m();
            CHECK(two_sat_satisfiable(inst) == oracle);
        }
    }
}

TEST_CASE("2-sat runtime grows linearly in the clause count") {
    // implication chains: (!x_i v x_{i+1}) repeated; doubling m should not
    // blow past linear growth
    auto chain = [](int n) {
        Instance inst;
        inst.n = n;
        for (int v = 1; v < n; ++v) inst.clauses.push_back(make_clause(-v, v + 1));
        return inst;
    };
    auto timed = [](const Instance& inst) {
        double best = 1e9;
        for (int rep = 0; rep < 5; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const bool ok = two_sat_satisfiable(inst);
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - start;
            CHECK(ok);
            best = std::min(best, elapsed.count());
        }
        return best;
    };
    const Instance small = chain(400'000);
    const Instance large = chain(800'000);
    const double t_small = timed(small);
    const double t_large = timed(large);
    CHECK(t_large / t_small < 2.5);
}

namespace {

ResidualFormula whole_instance_residual(const Instance& inst) {
    PartialAssignment partial(static_cast<std::size_t>(inst.n), -1);
    int falsified = 0;
    ResidualFormula residual = residual_under(inst, partial, falsified);
    CHECK(falsified == 0);
    return residual;
}

}  // namespace

TEST_CASE("mixing bound is zero on satisfiable residuals") {
    Instance inst;
    inst.n = 3;
    inst.clauses = {make_clause(1, 2), make_clause(2, 3), make_clause(-1, 3)};
    CHECK(test::oracle_min_unsatisfied(inst) == 0);
    CounterRng rng(5);
    const MixingBound result =
        mixing_lower_bound(whole_instance_residual(inst), rng);
    CHECK(result.bound == 0);
}

TEST_CASE("mixing bound on the fully contradictory two-variable set") {
    Instance inst;
    inst.n = 2;
    inst.clauses = {make_clause(1, 2), make_clause(-1, 2), make_clause(1, -2),
                    make_clause(-1, -2)};
    CHECK(test::oracle_min_unsatisfied(inst) == 1);
    CounterRng rng(6);
    const MixingBound result =
        mixing_lower_bound(whole_instance_residual(inst), rng);
    CHECK(result.bound >= 0);
    CHECK(result.bound <= 1);
    // the energy is constant here, so the relaxation is exact
    CHECK(result.bound == 1);
}

TEST_CASE("mixing bound never exceeds the true residual optimum") {
    CounterRng gen_rng(29);
    CounterRng mix_rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + static_cast<int>(gen_rng.next_below(7));  // 4..10
        const Instance inst = generate_instance(n, 3 * n, gen_rng);
        const MixingBound result =
            mixing_lower_bound(whole_instance_residual(inst), mix_rng);
        CHECK(result.bound <= test::oracle_min_unsatisfied(inst));
    }
}

TEST_CASE("mixing bound requires a nonempty residual") {
    CounterRng rng(1);
    ResidualFormula residual;
    residual.n = 3;
    CHECK_THROWS_AS(mixing_lower_bound(residual, rng), InvalidArgument);
}

TEST_CASE("rounding forced geometries") {
    Instance inst;
    inst.n = 3;
    inst.clauses = {make_clause(1, 2), make_clause(2, 3)};
    VectorRelaxationState state;
    state.k = 4;
    state.truth = {1.0, 0.0, 0.0, 0.0};

    CounterRng rng(9);
    state.vectors = {state.truth, state.truth, state.truth};
    const Assignment all_true = round_assignment(state, inst, 5, rng);
    CHECK(all_true.bits == 0);

    std::vector<double> anti = {-1.0, 0.0, 0.0, 0.0};
    state.vectors = {anti, anti, anti};
    const Assignment all_false = round_assignment(state, inst, 5, rng);
    CHECK(all_false.bits == 0b111);
}

TEST_CASE("rounded assignments are valid upper bounds") {
    CounterRng gen_rng(37);
    CounterRng mix_rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4 + static_cast<int>(gen_rng.next_below(7));
        const Instance inst = generate_instance(n, 3 * n, gen_rng);
        const MixingBound relax =
            mixing_lower_bound(whole_instance_residual(inst), mix_rng);
        const Assignment rounded = round_assignment(relax.state, inst, 20, mix_rng);
        const int unsat = inst.m() - count_satisfied(inst, rounded);
        CHECK(unsat >= test::oracle_min_unsatisfied(inst));
    }
}

TEST_CASE("mixbandb solves the worked example") {
    const ClassicalRunRecord record = mixbandb_solve(test::worked_example());
    CHECK(record.best_unsatisfied == 1);
    CHECK(record.n_calls >= 1);
    const Instance inst = test::worked_example();
    CHECK(inst.m() - count_satisfied(inst, record.best_assignment) == 1);
}

TEST_CASE("mixbandb agrees with the satisfiability decision") {
    const GeneratedDataset ds = generate_dataset(6, 150, 47);
    for (const Instance& inst : ds.instances) {
        const ClassicalRunRecord record = mixbandb_solve(inst);
        CHECK((record.best_unsatisfied == 0) == two_sat_satisfiable(inst));
    }
}

TEST_CASE("mixbandb is exact on generated instances across n") {
    MixBandBConfig config;
    config.audit_bounds = true;  // validates the bound sandwich at every node
    for (int n : {4, 6, 8, 10}) {
        const GeneratedDataset ds = generate_dataset(n, 60, 53);
        for (const Instance& inst : ds.instances) {
            const ClassicalRunRecord record = mixbandb_solve(inst, config);
            CHECK(record.best_unsatisfied == test::oracle_min_unsatisfied(inst));
            CHECK(inst.m() - count_satisfied(inst, record.best_assignment) ==
                  record.best_unsatisfied);
        }
    }
}

TEST_CASE("mixbandb is exact on raw (degenerate-optimum) instances") {
    CounterRng rng(59);
    MixBandBConfig config;
    config.audit_bounds = true;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(6));
        Instance inst = generate_instance(n, 3 * n, rng);
        inst.id = "raw-" + std::to_string(trial);
        const ClassicalRunRecord record = mixbandb_solve(inst, config);
        CHECK(record.best_unsatisfied == test::oracle_min_unsatisfied(inst));
    }
}

TEST_CASE("mixbandb call count is deterministic") {
    const GeneratedDataset ds = generate_dataset(7, 40, 61);
    REQUIRE(!ds.instances.empty());
    const Instance& inst = ds.instances.front();
    MixBandBConfig config;
    config.seed = 4;
    const ClassicalRunRecord a = mixbandb_solve(inst, config);
    const ClassicalRunRecord b = mixbandb_solve(inst, config);
    CHECK(a.n_calls == b.n_calls);
    CHECK(a.node_count == b.node_count);
    CHECK(a.best_assignment == b.best_assignment);
}

TEST_CASE("mixbandb handles the zero-clause instance") {
    const ClassicalRunRecord record = mixbandb_solve(test::zero_clause_instance(3));
    CHECK(record.best_unsatisfied == 0);
    CHECK(record.n_calls >= 1);
}
