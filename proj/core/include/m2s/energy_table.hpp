#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "m2s/instance.hpp"

namespace m2s {

// Diagonal problem Hamiltonian: entry k is the number of clauses unsatisfied
// by the assignment with index k. Stored densely because the dynamics touch
// every entry on every step.
struct EnergyTable {
    int n = 0;
    std::vector<std::int32_t> energies;
    std::uint64_t ground_index = 0;
    int ground_degeneracy = 0;

    std::int32_t min_energy() const { return energies[ground_index]; }
};

// Throws BudgetExceeded for n > 24.
EnergyTable build_energy_table(const Instance& inst);

// Difference between the largest and smallest unsatisfied-clause counts.
std::int32_t energy_spread(const EnergyTable& table);

// Mean energy spread over the tables divided by 2n, the hopping rate that
// balances the driver and problem energy scales. All tables must share n.
double heuristic_gamma(std::span<const EnergyTable> tables);

}  // namespace m2s
