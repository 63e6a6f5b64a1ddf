#include "m2s/energy_table.hpp"

#include <algorithm>

#include "m2s/errors.hpp"

namespace m2s {

EnergyTable build_energy_table(const Instance& inst) {
    if (inst.n > kBruteForceMaxN)
        throw BudgetExceeded("energy table limited to n <= 24, got n = " +
                             std::to_string(inst.n));
    EnergyTable table;
    table.n = inst.n;
    table.energies.assign(1ull << inst.n, 0);

    for (const Clause& c : inst.clauses) {
        // clause contributes 1 on the subcube where both literals are false
        std::uint64_t mask = 0, want = 0;
        for (Literal lit : {c.first, c.second}) {
            std::uint64_t bit = 1ull << (lit.var() - 1);
            mask |= bit;
            if (!lit.negated()) want |= bit;
        }
        const std::uint64_t total = table.energies.size();
        for (std::uint64_t k = 0; k < total; ++k)
            table.energies[k] += static_cast<std::int32_t>((k & mask) == want);
    }

    auto it = std::min_element(table.energies.begin(), table.energies.end());
    table.ground_index = static_cast<std::uint64_t>(it - table.energies.begin());
    table.ground_degeneracy =
        static_cast<int>(std::count(table.energies.begin(), table.energies.end(), *it));
    return table;
}

std::int32_t energy_spread(const EnergyTable& table) {
    auto [lo, hi] = std::minmax_element(table.energies.begin(), table.energies.end());
    return *hi - *lo;
}

double heuristic_gamma(std::span<const EnergyTable> tables) {
    if (tables.empty()) throw InvalidArgument("heuristic gamma needs at least one table");
    const int n = tables.front().n;
    std::int64_t spread_sum = 0;
    for (const EnergyTable& t : tables) {
        if (t.n != n)
            throw InvalidArgument("heuristic gamma requires tables with equal n");
        spread_sum += energy_spread(t);
    }
    return static_cast<double>(spread_sum) /
           (static_cast<double>(tables.size()) * 2.0 * n);
}

}  // namespace m2s
