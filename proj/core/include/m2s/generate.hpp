#pragma once

#include <cstdint>
#include <vector>

#include "m2s/instance.hpp"
#include "m2s/rng.hpp"

namespace m2s {

// m distinct clauses drawn uniformly by rejection: two distinct variables,
// independent literal signs, duplicates (as unordered pairs) resampled.
// Throws InvalidArgument when m exceeds the 2*n*(n-1) distinct-clause pool.
Instance generate_instance(int n, int m, CounterRng& rng);

struct DatasetStats {
    int n = 0;
    std::uint64_t attempted = 0;
    std::uint64_t kept = 0;
};

struct GeneratedDataset {
    std::vector<Instance> instances;  // kept, canonicalized, in attempt order
    DatasetStats stats;
};

// Runs `target_count` generation attempts with m = clause_factor * n, keeps
// only unique-optimum instances and canonicalizes each so the all-zeros
// assignment is the optimum. Attempt streams derive from
// (master_seed, n, attempt), so the result is independent of evaluation order.
GeneratedDataset generate_dataset(int n, std::uint64_t target_count,
                                  std::uint64_t master_seed,
                                  int clause_factor = 3, int workers = 1);

// One attempt of the dataset recipe; empty when the optimum is degenerate.
// Exposed so callers can schedule attempts themselves.
std::optional<Instance> dataset_attempt(int n, std::uint64_t attempt,
                                        std::uint64_t master_seed,
                                        int clause_factor);

}  // namespace m2s
