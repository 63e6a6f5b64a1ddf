#include "m2s/mix_bandb.hpp"

#include <algorithm>
#include <vector>

#include "m2s/errors.hpp"
#include "m2s/rng.hpp"

namespace m2s {

namespace {

struct Occurrences {
    std::vector<int> positive;  // per variable, occurrences of +v in residual
    std::vector<int> negative;
    std::vector<int> positive_units;
    std::vector<int> negative_units;
};

Occurrences count_occurrences(const ResidualFormula& residual) {
    Occurrences occ;
    occ.positive.assign(static_cast<std::size_t>(residual.n), 0);
    occ.negative.assign(static_cast<std::size_t>(residual.n), 0);
    occ.positive_units.assign(static_cast<std::size_t>(residual.n), 0);
    occ.negative_units.assign(static_cast<std::size_t>(residual.n), 0);
    auto tally = [&](Literal lit, bool unit) {
        const auto idx = static_cast<std::size_t>(lit.var() - 1);
        if (lit.negated()) {
            ++occ.negative[idx];
            if (unit) ++occ.negative_units[idx];
        } else {
            ++occ.positive[idx];
            if (unit) ++occ.positive_units[idx];
        }
    };
    for (const Clause& c : residual.pairs) {
        tally(c.first, false);
        tally(c.second, false);
    }
    for (const Literal& lit : residual.units) tally(lit, true);
    return occ;
}

// Brute-force minimum unsatisfied count of a residual over its free
// variables; used only by the audit mode.
int residual_minimum(const ResidualFormula& residual,
                     const std::vector<int>& free_vars) {
    const std::size_t total = std::size_t{1} << free_vars.size();
    std::vector<signed char> value(static_cast<std::size_t>(residual.n), 0);
    int best = static_cast<int>(residual.size()) + 1;
    for (std::size_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < free_vars.size(); ++i)
            value[static_cast<std::size_t>(free_vars[i] - 1)] =
                static_cast<signed char>((mask >> i) & 1u);
        auto lit_false = [&](Literal lit) {
            const bool is_true =
                (value[static_cast<std::size_t>(lit.var() - 1)] == 0) != lit.negated();
            return !is_true;
        };
        int unsat = 0;
        for (const Clause& c : residual.pairs)
            unsat += static_cast<int>(lit_false(c.first) && lit_false(c.second));
        for (const Literal& lit : residual.units)
            unsat += static_cast<int>(lit_false(lit));
        best = std::min(best, unsat);
    }
    return best;
}

class Solver {
public:
    Solver(const Instance& inst, const MixBandBConfig& config)
        : inst_(inst), config_(config),
          rng_(derive_stream_seed(config.seed,
                                  fnv1a(inst.id.data(), inst.id.size()), 0)) {
        record_.instance_id = inst.id;
        record_.best_unsatisfied = inst.m() + 1;
        record_.best_assignment = Assignment{inst.n, 0};
    }

    ClassicalRunRecord run() {
        PartialAssignment partial(static_cast<std::size_t>(inst_.n), -1);
        explore(partial, true);
        return record_;
    }

private:
    // One full pass over the clause list against a partial assignment.
    ResidualFormula scan(const PartialAssignment& partial, int& falsified) {
        ++record_.n_calls;
        return residual_under(inst_, partial, falsified);
    }

    // Commits a forced variable inside the local residual: satisfied clauses
    // drop, clauses losing a literal shrink to units, falsified units count.
    static void commit_in_residual(ResidualFormula& residual, int var,
                                   signed char value, int& falsified) {
        auto literal_truth = [var, value](Literal lit) -> int {
            if (lit.var() != var) return -1;  // untouched
            return ((value == 0) != lit.negated()) ? 1 : 0;
        };
        std::vector<Clause> pairs = std::move(residual.pairs);
        residual.pairs.clear();
        for (const Clause& c : pairs) {
            const int a = literal_truth(c.first);
            const int b = literal_truth(c.second);
            if (a == 1 || b == 1) continue;
            if (a == 0) residual.units.push_back(c.second);
            else if (b == 0) residual.units.push_back(c.first);
            else residual.pairs.push_back(c);
        }
        std::vector<Literal> units = std::move(residual.units);
        residual.units.clear();
        for (const Literal& lit : units) {
            const int t = literal_truth(lit);
            if (t == 1) continue;
            if (t == 0) ++falsified;
            else residual.units.push_back(lit);
        }
    }

    // Applies the dominating unit-literal rule to a fixpoint: if the unit
    // occurrences of a literal match or exceed every occurrence of its
    // negation, committing that literal cannot lose clauses on balance. The
    // clause list is consulted once; the fixpoint runs on the local residual.
    ResidualFormula simplify(PartialAssignment& partial, int& falsified) {
        ResidualFormula residual = scan(partial, falsified);
        for (;;) {
            if (residual.empty()) return residual;
            const Occurrences occ = count_occurrences(residual);
            int forced_var = 0;
            signed char forced_value = 0;
            for (int v = 1; v <= inst_.n; ++v) {
                const auto idx = static_cast<std::size_t>(v - 1);
                if (partial[idx] >= 0) continue;
                if (occ.positive[idx] == 0 && occ.negative[idx] == 0) continue;
                if (occ.positive_units[idx] >= occ.negative[idx]) {
                    forced_var = v;
                    forced_value = 0;  // true
                    break;
                }
                if (occ.negative_units[idx] >= occ.positive[idx]) {
                    forced_var = v;
                    forced_value = 1;  // false
                    break;
                }
            }
            if (forced_var == 0) return residual;
            partial[static_cast<std::size_t>(forced_var - 1)] = forced_value;
            commit_in_residual(residual, forced_var, forced_value, falsified);
        }
    }

    Assignment complete(const PartialAssignment& partial) const {
        Assignment a{inst_.n, 0};
        for (int v = 1; v <= inst_.n; ++v)
            if (partial[static_cast<std::size_t>(v - 1)] == 1)
                a.bits |= std::uint64_t{1} << (v - 1);
        return a;
    }

    void offer_incumbent(int unsatisfied, const Assignment& assignment) {
        if (unsatisfied < record_.best_unsatisfied) {
            record_.best_unsatisfied = unsatisfied;
            record_.best_assignment = assignment;
        }
    }

    void explore(PartialAssignment partial, bool root) {
        ++record_.node_count;
        int falsified = 0;
        ResidualFormula residual = simplify(partial, falsified);
        if (residual.empty()) {
            offer_incumbent(falsified, complete(partial));
            return;
        }
        if (falsified >= record_.best_unsatisfied) return;

        ++record_.n_calls;  // relaxation reads the whole residual
        MixingBound relax = mixing_lower_bound(residual, rng_, config_.mixing);

        if (config_.audit_bounds) {
            std::vector<int> free_vars;
            for (int v = 1; v <= inst_.n; ++v)
                if (partial[static_cast<std::size_t>(v - 1)] < 0)
                    free_vars.push_back(v);
            const int truth = residual_minimum(residual, free_vars);
            if (relax.bound > truth)
                throw Error("mixing bound " + std::to_string(relax.bound) +
                            " exceeds residual optimum " + std::to_string(truth) +
                            " on " + inst_.id);
        }

        if (root) {
            int rounded_unsat = 0;
            Assignment rounded =
                round_assignment(relax.state, inst_, config_.rounding_rounds,
                                 rng_, &record_.n_calls, &rounded_unsat);
            offer_incumbent(rounded_unsat, rounded);
        }

        if (falsified + relax.bound >= record_.best_unsatisfied) return;

        // branch: most-occurring free variable, relaxation-suggested polarity first
        Occurrences occ = count_occurrences(residual);
        int branch_var = 0;
        int branch_count = -1;
        for (int v = 1; v <= inst_.n; ++v) {
            const auto idx = static_cast<std::size_t>(v - 1);
            if (partial[idx] >= 0) continue;
            const int count = occ.positive[idx] + occ.negative[idx];
            if (count > branch_count) {
                branch_count = count;
                branch_var = v;
            }
        }
        if (branch_var == 0) {  // no free variable appears in the residual
            offer_incumbent(falsified, complete(partial));
            return;
        }

        const double alignment =
            [&] {
                double s = 0.0;
                const auto& v0 = relax.state.truth;
                const auto& vi =
                    relax.state.vectors[static_cast<std::size_t>(branch_var - 1)];
                for (std::size_t d = 0; d < v0.size(); ++d) s += v0[d] * vi[d];
                return s;
            }();
        const signed char first_value = alignment >= 0.0 ? 0 : 1;

        for (signed char value : {first_value, static_cast<signed char>(1 - first_value)}) {
            PartialAssignment child = partial;
            child[static_cast<std::size_t>(branch_var - 1)] = value;
            explore(std::move(child), false);
        }
    }

    const Instance& inst_;
    const MixBandBConfig& config_;
    CounterRng rng_;
    ClassicalRunRecord record_;
};

}  // namespace

ClassicalRunRecord mixbandb_solve(const Instance& inst,
                                  const MixBandBConfig& config) {
    if (inst.m() == 0) {
        ClassicalRunRecord record;
        record.instance_id = inst.id;
        record.n_calls = 1;
        record.best_unsatisfied = 0;
        record.best_assignment = Assignment{inst.n, 0};
        record.node_count = 1;
        return record;
    }
    Solver solver(inst, config);
    return solver.run();
}

}  // namespace m2s
