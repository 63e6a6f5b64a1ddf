#pragma once

#include <vector>

#include "m2s/instance.hpp"
#include "m2s/rng.hpp"

namespace m2s {

// Residual formula under a partial assignment, over the original variable
// labels: pairs keep both literals free, units lost one literal to a
// falsified partner.
struct ResidualFormula {
    int n = 0;
    std::vector<Clause> pairs;
    std::vector<Literal> units;

    bool empty() const { return pairs.empty() && units.empty(); }
    std::size_t size() const { return pairs.size() + units.size(); }
};

// Per-variable truth value in a partial assignment: -1 unset, 0 true, 1 false
// (matching the bit convention of Assignment).
using PartialAssignment = std::vector<signed char>;

// Classifies every clause of the instance under the partial assignment.
// Satisfied clauses are dropped; clauses with both literals false are counted
// into `falsified`.
ResidualFormula residual_under(const Instance& inst,
                               const PartialAssignment& partial, int& falsified);

struct MixingOptions {
    int k = 0;  // embedding dimension; 0 selects ceil(sqrt(2n)) + 1
    // The descent must land within the integer-rounding slack (1e-6) of the
    // relaxation optimum or the ceil'd bound can overshoot the true minimum,
    // so the sweep stop is far below that slack.
    int max_sweeps = 500;
    double tol = 1e-9;  // stop when a sweep's relative objective decrease falls below
};

// Unit vectors of the low-rank semidefinite relaxation: v0 is the truth
// direction, vectors[i] relaxes the spin of variable i+1.
struct VectorRelaxationState {
    int k = 0;
    std::vector<double> truth;                 // v0
    std::vector<std::vector<double>> vectors;  // v1..vn
    double objective = 0.0;                    // relaxation value, clause units
};

struct MixingBound {
    int bound = 0;  // integer lower bound on the residual minimum unsatisfied count
    VectorRelaxationState state;
};

// Coordinate-descent minimization of the vector relaxation of the residual
// Ising energy: each update replaces a vector with the negated, normalized
// gradient, which is the exact minimizer of the objective in that coordinate,
// so the objective never increases. With k >= sqrt(2n)+1 the low-rank problem
// has no spurious local minima, and the converged value lower-bounds the true
// minimum; bound = max(0, ceil(objective - 1e-6)).
MixingBound mixing_lower_bound(const ResidualFormula& residual, CounterRng& rng,
                               const MixingOptions& options = {});

// Convenience overload; the residual of (instance, partial) must be nonempty.
MixingBound mixing_lower_bound(const Instance& inst,
                               const PartialAssignment& partial, CounterRng& rng,
                               const MixingOptions& options = {});

// Hyperplane rounding: draws `rounds` random directions r and sets variable i
// true iff sign(v_i . r) == sign(v0 . r); returns the candidate with the
// fewest unsatisfied clauses on the full instance. evaluations is incremented
// once per scored candidate; best_unsatisfied receives the winner's score.
Assignment round_assignment(const VectorRelaxationState& state,
                            const Instance& inst, int rounds, CounterRng& rng,
                            std::uint64_t* evaluations = nullptr,
                            int* best_unsatisfied = nullptr);

}  // namespace m2s
