#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "m2s/energy_table.hpp"
#include "m2s/instance.hpp"

namespace m2s {

// Two-body spin form of the problem Hamiltonian,
//   E(s) = offset + sum_{i<j} J_ij s_i s_j + sum_i h_i s_i,
// with s_i = +1 for bit 0 (true) and -1 for bit 1 (false). Every clause
// contributes quarter-integer terms, so coefficients are accumulated as
// exact integer quarter-units and the reconstruction identity holds with
// zero floating error.
struct IsingCoefficients {
    int n = 0;
    std::int64_t offset_quarters = 0;
    std::vector<std::int64_t> field_quarters;             // index 0 -> variable 1
    std::map<std::pair<int, int>, std::int64_t> coupling_quarters;  // (i<j), 1-based

    double offset() const { return static_cast<double>(offset_quarters) / 4.0; }
    double field(int var) const {
        return static_cast<double>(field_quarters[static_cast<std::size_t>(var - 1)]) / 4.0;
    }
    double coupling(int a, int b) const;

    // Energy of the assignment with index k, in exact quarter units.
    std::int64_t energy_quarters(std::uint64_t k) const;
};

IsingCoefficients build_ising(const Instance& inst);

// Exact spectral agreement: 4 * table.energies[k] == energy_quarters(k) for
// every k. Cheap enough to run over the full table for n <= 16.
bool ising_matches_table(const IsingCoefficients& ising, const EnergyTable& table);

// Line-oriented text export: `offset <v>`, `h <i> <v>`, `J <i> <j> <v>`.
std::string serialize_ising(const IsingCoefficients& ising);

}  // namespace m2s
