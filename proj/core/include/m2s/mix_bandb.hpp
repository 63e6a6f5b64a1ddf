#pragma once

#include <cstdint>
#include <string>

#include "m2s/instance.hpp"
#include "m2s/mixing.hpp"

namespace m2s {

struct MixBandBConfig {
    MixingOptions mixing;
    int rounding_rounds = 20;
    std::uint64_t seed = 0;
    // When set (n <= 24), every node's bound is checked against a brute-force
    // scan of the residual; a violated bound throws.
    bool audit_bounds = false;
};

struct ClassicalRunRecord {
    std::string instance_id;
    std::uint64_t n_calls = 0;  // accesses to the problem specification
    int best_unsatisfied = 0;
    Assignment best_assignment;
    std::uint64_t node_count = 0;
};

// Exact branch and bound. Each node simplifies the clause list under its
// partial assignment (dominating unit literals are forced), prunes with the
// mixing-method relaxation bound, and branches on the free variable with the
// highest residual occurrence count, trying the polarity suggested by the
// relaxation first. The incumbent starts from hyperplane rounding at the root.
//
// A problem call is one full pass over the clause list against a candidate or
// partial assignment, plus one per relaxation solve.
ClassicalRunRecord mixbandb_solve(const Instance& inst,
                                  const MixBandBConfig& config = {});

}  // namespace m2s
