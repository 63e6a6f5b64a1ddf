#include "m2s/generate.hpp"

#include <atomic>
#include <set>
#include <string>
#include <thread>

#include "m2s/errors.hpp"

namespace m2s {

Instance generate_instance(int n, int m, CounterRng& rng) {
    if (n <= 0) throw InvalidArgument("n must be positive");
    if (m <= 0) throw InvalidArgument("m must be positive");
    const std::uint64_t pool =
        2ull * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1);
    if (static_cast<std::uint64_t>(m) > pool)
        throw InvalidArgument("infeasible m: " + std::to_string(m) +
                              " exceeds " + std::to_string(pool) +
                              " distinct clauses for n = " + std::to_string(n));

    Instance inst;
    inst.n = n;
    inst.seed = rng.seed();
    std::set<std::pair<int, int>> seen;
    while (inst.m() < m) {
        int va = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
        int vb = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1))) + 1;
        if (vb >= va) ++vb;  // uniform over the n-1 variables other than va
        int a = rng.next_bool() ? -va : va;
        int b = rng.next_bool() ? -vb : vb;
        Clause c = make_clause(a, b);
        if (seen.insert({c.first.code, c.second.code}).second)
            inst.clauses.push_back(c);
    }
    return inst;
}

std::optional<Instance> dataset_attempt(int n, std::uint64_t attempt,
                                        std::uint64_t master_seed,
                                        int clause_factor) {
    CounterRng rng(derive_stream_seed(master_seed, static_cast<std::uint64_t>(n),
                                      attempt));
    Instance raw = generate_instance(n, clause_factor * n, rng);
    BruteForceResult bf = brute_force_optima(raw);
    if (bf.optima.size() != 1) return std::nullopt;
    Instance kept = canonicalize_to_zero(raw, bf.optima.front());
    kept.attempt = attempt;
    kept.id = "m2s-n" + std::to_string(n) + "-s" + std::to_string(*kept.seed) +
              "-a" + std::to_string(attempt);
    return kept;
}

GeneratedDataset generate_dataset(int n, std::uint64_t target_count,
                                  std::uint64_t master_seed, int clause_factor,
                                  int workers) {
    if (n < 2 || n > kBruteForceMaxN)
        throw InvalidArgument("dataset generation requires 2 <= n <= 24");
    if (clause_factor <= 0) throw InvalidArgument("clause_factor must be positive");

    std::vector<std::optional<Instance>> slots(target_count);
    if (workers <= 1) {
        for (std::uint64_t a = 0; a < target_count; ++a)
            slots[a] = dataset_attempt(n, a, master_seed, clause_factor);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto work = [&] {
            for (;;) {
                std::uint64_t a = next.fetch_add(1);
                if (a >= target_count) return;
                slots[a] = dataset_attempt(n, a, master_seed, clause_factor);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    GeneratedDataset out;
    out.stats.n = n;
    out.stats.attempted = target_count;
    for (auto& slot : slots)
        if (slot) {
            out.instances.push_back(std::move(*slot));
            ++out.stats.kept;
        }
    return out;
}

}  // namespace m2s
