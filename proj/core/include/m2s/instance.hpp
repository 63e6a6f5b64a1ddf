#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace m2s {

// Signed DIMACS-style literal: +v is the variable, -v its negation.
// Variables are 1-based; code 0 is invalid.
struct Literal {
    int code = 0;

    int var() const { return code < 0 ? -code : code; }
    bool negated() const { return code < 0; }

    friend bool operator==(const Literal&, const Literal&) = default;
};

// Two literals on distinct variables, stored with |first.code| < |second.code|
// so unordered-pair equality reduces to field equality.
struct Clause {
    Literal first;
    Literal second;

    friend bool operator==(const Clause&, const Clause&) = default;
};

// Builds a clause from two literal codes, normalizing order.
// Throws InvalidArgument on zero codes or a repeated variable.
Clause make_clause(int a, int b);

// Truth assignment packed into an integer index: variable i occupies bit
// i-1, bit value 0 = true, 1 = false. Index 0 is the all-true assignment.
struct Assignment {
    int n = 0;
    std::uint64_t bits = 0;

    bool is_false(int var) const { return (bits >> (var - 1)) & 1u; }
    bool is_true(int var) const { return !is_false(var); }

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Instance {
    int n = 0;
    std::vector<Clause> clauses;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> attempt;
    bool canonicalized = false;
    std::string id;

    int m() const { return static_cast<int>(clauses.size()); }
    double clause_density() const { return static_cast<double>(m()) / n; }

    friend bool operator==(const Instance&, const Instance&) = default;
};

// True when the literal evaluates to true under the assignment.
inline bool literal_true(Literal lit, const Assignment& a) {
    return lit.negated() ? a.is_false(lit.var()) : a.is_true(lit.var());
}

// Validates clause structure against n: distinct in-range variables and
// pairwise-distinct clauses. Throws InvalidArgument/ParseError flavors are
// produced by the callers; this reports via the returned message.
std::optional<std::string> validate_instance(const Instance& inst);

// Number of clauses with at least one true literal.
// Throws InvalidArgument when assignment.n != instance.n.
int count_satisfied(const Instance& inst, const Assignment& a);

struct BruteForceResult {
    int best_satisfied = 0;
    std::vector<Assignment> optima;  // ascending index order
};

inline constexpr int kBruteForceMaxN = 24;

// Exhaustive scan of all 2^n assignments. Throws BudgetExceeded for n > 24.
BruteForceResult brute_force_optima(const Instance& inst);

// True iff the instance has exactly one maximizing assignment.
bool has_unique_optimum(const Instance& inst);

// Multiset of satisfied counts over all 2^n assignments, as a histogram
// indexed by satisfied count. Used to check spectrum preservation.
std::vector<std::uint64_t> satisfied_spectrum(const Instance& inst);

// Negates every literal of each variable assigned false in `optimum`, so the
// all-zeros (all-true) assignment becomes optimal. For n <= 24 the witness is
// verified against brute force; a non-optimal witness throws InvalidArgument.
Instance canonicalize_to_zero(const Instance& inst, const Assignment& optimum);

}  // namespace m2s
