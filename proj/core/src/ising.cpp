#include "m2s/ising.hpp"

#include <sstream>

#include "m2s/errors.hpp"

namespace m2s {

double IsingCoefficients::coupling(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = coupling_quarters.find({a, b});
    return it == coupling_quarters.end() ? 0.0
                                         : static_cast<double>(it->second) / 4.0;
}

std::int64_t IsingCoefficients::energy_quarters(std::uint64_t k) const {
    auto spin = [k](int var) -> std::int64_t {
        return ((k >> (var - 1)) & 1u) ? -1 : 1;
    };
    std::int64_t e = offset_quarters;
    for (int v = 1; v <= n; ++v)
        e += field_quarters[static_cast<std::size_t>(v - 1)] * spin(v);
    for (const auto& [pair, j] : coupling_quarters)
        e += j * spin(pair.first) * spin(pair.second);
    return e;
}

IsingCoefficients build_ising(const Instance& inst) {
    IsingCoefficients ising;
    ising.n = inst.n;
    ising.field_quarters.assign(static_cast<std::size_t>(inst.n), 0);
    for (const Clause& c : inst.clauses) {
        const int a = c.first.var();
        const int b = c.second.var();
        const std::int64_t sa = c.first.negated() ? -1 : 1;
        const std::int64_t sb = c.second.negated() ? -1 : 1;
        ising.offset_quarters += 1;
        ising.field_quarters[static_cast<std::size_t>(a - 1)] -= sa;
        ising.field_quarters[static_cast<std::size_t>(b - 1)] -= sb;
        ising.coupling_quarters[{a, b}] += sa * sb;
    }
    return ising;
}

bool ising_matches_table(const IsingCoefficients& ising, const EnergyTable& table) {
    if (ising.n != table.n) return false;
    const std::uint64_t total = table.energies.size();
    for (std::uint64_t k = 0; k < total; ++k)
        if (ising.energy_quarters(k) != 4ll * table.energies[k]) return false;
    return true;
}

std::string serialize_ising(const IsingCoefficients& ising) {
    std::ostringstream out;
    out << "offset " << ising.offset() << "\n";
    for (int v = 1; v <= ising.n; ++v) {
        if (ising.field_quarters[static_cast<std::size_t>(v - 1)] != 0)
            out << "h " << v << " " << ising.field(v) << "\n";
    }
    for (const auto& [pair, j] : ising.coupling_quarters) {
        if (j != 0)
            out << "J " << pair.first << " " << pair.second << " "
                << static_cast<double>(j) / 4.0 << "\n";
    }
    return out.str();
}

}  // namespace m2s
