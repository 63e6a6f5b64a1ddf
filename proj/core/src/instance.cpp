#include "m2s/instance.hpp"

#include <algorithm>
#include <set>

#include "m2s/errors.hpp"

namespace m2s {

Clause make_clause(int a, int b) {
    if (a == 0 || b == 0) throw InvalidArgument("literal code must be nonzero");
    int va = a < 0 ? -a : a;
    int vb = b < 0 ? -b : b;
    if (va == vb)
        throw InvalidArgument("clause literals must use distinct variables");
    if (va < vb) return Clause{Literal{a}, Literal{b}};
    return Clause{Literal{b}, Literal{a}};
}

std::optional<std::string> validate_instance(const Instance& inst) {
    if (inst.n <= 0) return "variable count must be positive";
    std::set<std::pair<int, int>> seen;
    for (const Clause& c : inst.clauses) {
        int va = c.first.var();
        int vb = c.second.var();
        if (c.first.code == 0 || c.second.code == 0)
            return "zero literal code";
        if (va == vb) return "clause repeats a variable";
        if (va > vb) return "clause literals not in canonical order";
        if (vb > inst.n) return "variable out of range";
        if (!seen.insert({c.first.code, c.second.code}).second)
            return "duplicate clause";
    }
    return std::nullopt;
}

int count_satisfied(const Instance& inst, const Assignment& a) {
    if (a.n != inst.n)
        throw InvalidArgument("assignment length does not match instance");
    int satisfied = 0;
    for (const Clause& c : inst.clauses)
        if (literal_true(c.first, a) || literal_true(c.second, a)) ++satisfied;
    return satisfied;
}

namespace {

// Bit mask form of a clause test: clause is unsatisfied at index k iff
// (k & mask) == want, where each literal contributes its "false" bit pattern.
struct ClauseMask {
    std::uint64_t mask;
    std::uint64_t want;
};

ClauseMask clause_mask(const Clause& c) {
    ClauseMask cm{0, 0};
    for (Literal lit : {c.first, c.second}) {
        std::uint64_t bit = 1ull << (lit.var() - 1);
        cm.mask |= bit;
        // positive literal is false when its bit is 1; negated when 0
        if (!lit.negated()) cm.want |= bit;
    }
    return cm;
}

void check_brute_budget(const Instance& inst) {
    if (inst.n > kBruteForceMaxN)
        throw BudgetExceeded("brute force limited to n <= 24, got n = " +
                             std::to_string(inst.n));
}

}  // namespace

BruteForceResult brute_force_optima(const Instance& inst) {
    check_brute_budget(inst);
    std::vector<ClauseMask> masks;
    masks.reserve(inst.clauses.size());
    for (const Clause& c : inst.clauses) masks.push_back(clause_mask(c));

    const std::uint64_t total = 1ull << inst.n;
    const int m = inst.m();
    BruteForceResult result;
    result.best_satisfied = -1;
    for (std::uint64_t k = 0; k < total; ++k) {
        int unsat = 0;
        for (const ClauseMask& cm : masks)
            unsat += static_cast<int>((k & cm.mask) == cm.want);
        int sat = m - unsat;
        if (sat > result.best_satisfied) {
            result.best_satisfied = sat;
            result.optima.clear();
        }
        if (sat == result.best_satisfied)
            result.optima.push_back(Assignment{inst.n, k});
    }
    return result;
}

bool has_unique_optimum(const Instance& inst) {
    return brute_force_optima(inst).optima.size() == 1;
}

std::vector<std::uint64_t> satisfied_spectrum(const Instance& inst) {
    check_brute_budget(inst);
    std::vector<ClauseMask> masks;
    for (const Clause& c : inst.clauses) masks.push_back(clause_mask(c));
    std::vector<std::uint64_t> hist(inst.clauses.size() + 1, 0);
    const std::uint64_t total = 1ull << inst.n;
    const int m = inst.m();
    for (std::uint64_t k = 0; k < total; ++k) {
        int unsat = 0;
        for (const ClauseMask& cm : masks)
            unsat += static_cast<int>((k & cm.mask) == cm.want);
        ++hist[static_cast<std::size_t>(m - unsat)];
    }
    return hist;
}

Instance canonicalize_to_zero(const Instance& inst, const Assignment& optimum) {
    if (optimum.n != inst.n)
        throw InvalidArgument("witness length does not match instance");
    if (inst.n <= kBruteForceMaxN) {
        BruteForceResult bf = brute_force_optima(inst);
        if (count_satisfied(inst, optimum) != bf.best_satisfied)
            throw InvalidArgument("canonicalization witness is not optimal");
    }
    Instance out = inst;
    for (Clause& c : out.clauses) {
        // flipping variable v (set false in the witness) negates its literals
        if (optimum.is_false(c.first.var())) c.first.code = -c.first.code;
        if (optimum.is_false(c.second.var())) c.second.code = -c.second.code;
    }
    out.canonicalized = true;
    return out;
}

}  // namespace m2s
