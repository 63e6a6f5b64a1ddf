#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "m2s/errors.hpp"
#include "m2s/generate.hpp"
#include "m2s/instance.hpp"
#include "m2s/instance_io.hpp"
#include "m2s/rng.hpp"
#include "support/fixtures.hpp"
#include "support/logic_oracle.hpp"

using namespace m2s;

TEST_CASE("worked example counts five satisfied clauses on all-true") {
    const Instance inst = test::worked_example();
    CHECK(count_satisfied(inst, Assignment{3, 0}) == 5);
}

TEST_CASE("count_satisfied rejects mismatched assignment length") {
    const Instance inst = test::worked_example();
    CHECK_THROWS_AS(count_satisfied(inst, Assignment{4, 0}), InvalidArgument);
}

TEST_CASE("satisfied plus unsatisfied partitions the clause set") {
    CounterRng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst = generate_instance(6, 18, rng);
        for (std::uint64_t k = 0; k < 64; ++k) {
            const int sat = count_satisfied(inst, Assignment{6, k});
            CHECK(sat >= 0);
            CHECK(sat <= inst.m());
        }
    }
}

TEST_CASE("count_satisfied matches the truth-table oracle") {
    CounterRng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = generate_instance(4, 10, rng);
        for (std::uint64_t k = 0; k < 16; ++k)
            CHECK(count_satisfied(inst, Assignment{4, k}) ==
                  test::oracle_count_satisfied(inst, k));
    }
}

TEST_CASE("brute force finds the worked example's four optima") {
    const BruteForceResult bf = brute_force_optima(test::worked_example());
    CHECK(bf.best_satisfied == 5);
    REQUIRE(bf.optima.size() == 4);
    // maximizers arrive in ascending index order
    CHECK(std::is_sorted(bf.optima.begin(), bf.optima.end(),
                         [](const Assignment& a, const Assignment& b) {
                             return a.bits < b.bits;
                         }));
}

TEST_CASE("zero-clause instance has a fully degenerate optimum") {
    const BruteForceResult bf = brute_force_optima(test::zero_clause_instance(2));
    CHECK(bf.best_satisfied == 0);
    CHECK(bf.optima.size() == 4);
    CHECK_FALSE(has_unique_optimum(test::zero_clause_instance(2)));
}

TEST_CASE("brute force budget guard") {
    Instance inst = test::zero_clause_instance(25);
    CHECK_THROWS_AS(brute_force_optima(inst), BudgetExceeded);
}

TEST_CASE("unique optimum detection") {
    CHECK_FALSE(has_unique_optimum(test::worked_example()));

    Instance inst;
    inst.n = 2;
    inst.clauses = {make_clause(1, 2), make_clause(-1, 2), make_clause(1, -2)};
    // all-true satisfies all three; every other assignment satisfies fewer
    CHECK(test::oracle_best_satisfied(inst) == 3);
    CHECK(has_unique_optimum(inst));
}

TEST_CASE("generate_instance produces the requested distinct clauses") {
    CounterRng rng(3);
    const Instance inst = generate_instance(3, 6, rng);
    CHECK(inst.n == 3);
    CHECK(inst.m() == 6);
    std::set<std::pair<int, int>> seen;
    for (const Clause& c : inst.clauses) {
        CHECK(c.first.var() < c.second.var());
        CHECK(seen.insert({c.first.code, c.second.code}).second);
    }
}

TEST_CASE("generate_instance is deterministic in the seed") {
    CounterRng a(99), b(99);
    const Instance x = generate_instance(20, 60, a);
    const Instance y = generate_instance(20, 60, b);
    CHECK(x.clauses == y.clauses);
}

TEST_CASE("generate_instance rejects infeasible m") {
    CounterRng rng(1);
    CHECK_THROWS_AS(generate_instance(3, 13, rng), InvalidArgument);  // pool is 12
    CHECK_NOTHROW(generate_instance(3, 12, rng));
}

TEST_CASE("literal signs are balanced across seeds") {
    // fraction of clauses with both literals positive ~ Binomial(N, 1/4)
    std::uint64_t both_positive = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
        CounterRng rng(seed);
        const Instance inst = generate_instance(5, 15, rng);
        for (const Clause& c : inst.clauses) {
            ++total;
            if (!c.first.negated() && !c.second.negated()) ++both_positive;
        }
    }
    const double p = 0.25;
    const double expected = p * static_cast<double>(total);
    const double sigma = std::sqrt(static_cast<double>(total) * p * (1 - p));
    CHECK(std::abs(static_cast<double>(both_positive) - expected) < 3.0 * sigma);
}

TEST_CASE("canonicalize_to_zero makes all-zeros optimal and keeps the spectrum") {
    CounterRng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const Instance inst = generate_instance(6, 18, rng);
        const BruteForceResult bf = brute_force_optima(inst);
        const Instance canon = canonicalize_to_zero(inst, bf.optima.front());
        CHECK(canon.canonicalized);
        CHECK(count_satisfied(canon, Assignment{6, 0}) == bf.best_satisfied);
        CHECK(satisfied_spectrum(inst) == satisfied_spectrum(canon));
    }
}

TEST_CASE("canonicalize of an already-canonical instance is the identity") {
    CounterRng rng(23);
    const Instance inst = generate_instance(5, 15, rng);
    const BruteForceResult bf = brute_force_optima(inst);
    const Instance once = canonicalize_to_zero(inst, bf.optima.front());
    const Instance twice = canonicalize_to_zero(once, Assignment{5, 0});
    CHECK(once.clauses == twice.clauses);
}

TEST_CASE("canonicalize rejects a non-optimal witness") {
    const Instance inst = test::worked_example();
    // index 1 satisfies four clauses, one short of the optimum
    CHECK(count_satisfied(inst, Assignment{3, 1}) == 4);
    CHECK_THROWS_AS(canonicalize_to_zero(inst, Assignment{3, 1}), InvalidArgument);
}

TEST_CASE("generate_dataset keeps only unique optima, canonicalized") {
    const GeneratedDataset ds = generate_dataset(5, 300, 42);
    CHECK(ds.stats.attempted == 300);
    CHECK(ds.stats.kept == ds.instances.size());
    CHECK(ds.stats.kept < 300);
    for (const Instance& inst : ds.instances) {
        CHECK(inst.m() == 15);
        CHECK(inst.canonicalized);
        CHECK(has_unique_optimum(inst));
        const BruteForceResult bf = brute_force_optima(inst);
        CHECK(bf.optima.front().bits == 0);
        CHECK(!inst.id.empty());
        CHECK(inst.seed.has_value());
        CHECK(inst.attempt.has_value());
    }
}

TEST_CASE("generate_dataset is reproducible and worker-count independent") {
    const GeneratedDataset a = generate_dataset(5, 200, 77, 3, 1);
    const GeneratedDataset b = generate_dataset(5, 200, 77, 3, 4);
    REQUIRE(a.instances.size() == b.instances.size());
    for (std::size_t i = 0; i < a.instances.size(); ++i)
        CHECK(a.instances[i] == b.instances[i]);
}

TEST_CASE("kept fraction is stable across master seeds") {
    // each seed's kept count should sit within 3 sigma of the pooled rate
    const std::uint64_t target = 300;
    std::vector<std::uint64_t> kept;
    std::uint64_t total_kept = 0;
    for (std::uint64_t seed = 900; seed < 910; ++seed) {
        const GeneratedDataset ds = generate_dataset(5, target, seed);
        kept.push_back(ds.stats.kept);
        total_kept += ds.stats.kept;
    }
    const double p = static_cast<double>(total_kept) / (10.0 * target);
    const double sigma = std::sqrt(target * p * (1.0 - p));
    for (std::uint64_t k : kept)
        CHECK(std::abs(static_cast<double>(k) - p * target) < 3.0 * sigma);
}

TEST_CASE("satisfiable fraction of kept instances decreases with n") {
    auto satisfiable_fraction = [](int n) {
        const GeneratedDataset ds = generate_dataset(n, 600, 5);
        std::size_t satisfiable = 0;
        for (const Instance& inst : ds.instances)
            if (brute_force_optima(inst).best_satisfied == inst.m()) ++satisfiable;
        return static_cast<double>(satisfiable) /
               static_cast<double>(ds.instances.size());
    };
    CHECK(satisfiable_fraction(5) > satisfiable_fraction(8));
}

TEST_CASE("serialize produces the header and clause lines for the example") {
    const std::string text = serialize_instance(test::worked_example());
    CHECK(text.find("p cnf 3 6\n") != std::string::npos);
    CHECK(text.find("1 2 0\n") != std::string::npos);
    CHECK(text.find("-2 -3 0\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 7);
}

TEST_CASE("parse round-trips serialized instances, metadata included") {
    CounterRng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = generate_instance(7, 21, rng);
        inst.id = "roundtrip-" + std::to_string(trial);
        inst.attempt = static_cast<std::uint64_t>(trial);
        inst.canonicalized = trial % 2 == 0;
        const Instance back = parse_instance(serialize_instance(inst));
        CHECK(back == inst);
    }
}

TEST_CASE("parse validation failures") {
    CHECK_THROWS_AS(parse_instance("p cnf 3 1\n1 7 0\n"), ParseError);   // out of range
    CHECK_THROWS_AS(parse_instance("p cnf 3 1\n1 -1 0\n"), ParseError);  // tautology
    CHECK_THROWS_AS(parse_instance("p cnf 3 1\n2 2 0\n"), ParseError);   // repeat var
    CHECK_THROWS_AS(parse_instance("p cnf 3 2\n1 2 0\n2 1 0\n"), ParseError);  // dup
    CHECK_THROWS_AS(parse_instance("1 2 0\n"), ParseError);              // no header
    CHECK_THROWS_AS(parse_instance("p dnf 3 1\n1 2 0\n"), ParseError);   // bad header
    CHECK_THROWS_AS(parse_instance("p cnf 3 2\n1 2 0\n"), ParseError);   // count short
}

TEST_CASE("manifest round trip") {
    const std::vector<ManifestEntry> entries = {{"a", "a.cnf"}, {"b", "sub/b.cnf"}};
    CHECK(parse_manifest(serialize_manifest(entries)).size() == 2);
    CHECK(parse_manifest(serialize_manifest(entries))[1].path == "sub/b.cnf");
}
