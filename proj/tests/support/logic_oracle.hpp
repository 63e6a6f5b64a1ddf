#pragma once

// Independent logical evaluator used as the oracle for clause counting.
// Deliberately avoids the bit-mask path of the library: assignments are
// expanded to explicit truth values and clauses evaluated literal by literal.

#include <cstdint>
#include <vector>

#include "m2s/instance.hpp"

namespace m2s::test {

inline std::vector<bool> truth_values(int n, std::uint64_t index) {
    std::vector<bool> values(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        values[static_cast<std::size_t>(v)] = ((index >> v) & 1u) == 0;  // bit 0 = true
    return values;
}

inline bool eval_literal(const Literal& lit, const std::vector<bool>& values) {
    const bool var = values[static_cast<std::size_t>(lit.var() - 1)];
    return lit.negated() ? !var : var;
}

inline int oracle_count_satisfied(const Instance& inst, std::uint64_t index) {
    const std::vector<bool> values = truth_values(inst.n, index);
    int satisfied = 0;
    for (const Clause& c : inst.clauses)
        if (eval_literal(c.first, values) || eval_literal(c.second, values))
            ++satisfied;
    return satisfied;
}

// Exhaustive optimum by direct truth-table evaluation.
inline int oracle_best_satisfied(const Instance& inst) {
    int best = -1;
    const std::uint64_t total = std::uint64_t{1} << inst.n;
    for (std::uint64_t k = 0; k < total; ++k)
        best = std::max(best, oracle_count_satisfied(inst, k));
    return best;
}

inline int oracle_min_unsatisfied(const Instance& inst) {
    return inst.m() - oracle_best_satisfied(inst);
}

}  // namespace m2s::test
