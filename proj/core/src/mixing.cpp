#include "m2s/mixing.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "m2s/errors.hpp"

namespace m2s {

ResidualFormula residual_under(const Instance& inst,
                               const PartialAssignment& partial, int& falsified) {
    ResidualFormula residual;
    residual.n = inst.n;
    falsified = 0;
    auto literal_state = [&](Literal lit) -> signed char {
        const signed char v = partial[static_cast<std::size_t>(lit.var() - 1)];
        if (v < 0) return -1;                       // free
        const bool value_true = (v == 0);
        return (value_true != lit.negated()) ? 1 : 0;  // literal truth
    };
    for (const Clause& c : inst.clauses) {
        const signed char a = literal_state(c.first);
        const signed char b = literal_state(c.second);
        if (a == 1 || b == 1) continue;  // satisfied
        if (a == 0 && b == 0) {
            ++falsified;
        } else if (a == 0) {
            residual.units.push_back(c.second);
        } else if (b == 0) {
            residual.units.push_back(c.first);
        } else {
            residual.pairs.push_back(c);
        }
    }
    return residual;
}

namespace {

struct QuarterIsing {
    // quarter-unit coefficients over the residual's free variables
    std::int64_t offset = 0;
    std::vector<std::int64_t> fields;                    // per variable, 1-based-1
    std::vector<std::vector<std::pair<int, std::int64_t>>> couplings;  // adjacency
};

QuarterIsing residual_ising(const ResidualFormula& residual) {
    QuarterIsing q;
    q.fields.assign(static_cast<std::size_t>(residual.n), 0);
    q.couplings.assign(static_cast<std::size_t>(residual.n), {});
    auto add_coupling = [&](int a, int b, std::int64_t j) {
        q.couplings[static_cast<std::size_t>(a - 1)].push_back({b, j});
        q.couplings[static_cast<std::size_t>(b - 1)].push_back({a, j});
    };
    for (const Clause& c : residual.pairs) {
        const std::int64_t sa = c.first.negated() ? -1 : 1;
        const std::int64_t sb = c.second.negated() ? -1 : 1;
        q.offset += 1;
        q.fields[static_cast<std::size_t>(c.first.var() - 1)] -= sa;
        q.fields[static_cast<std::size_t>(c.second.var() - 1)] -= sb;
        add_coupling(c.first.var(), c.second.var(), sa * sb);
    }
    for (const Literal& lit : residual.units) {
        const std::int64_t s = lit.negated() ? -1 : 1;
        q.offset += 2;  // (1 - s*sigma)/2 in quarter units
        q.fields[static_cast<std::size_t>(lit.var() - 1)] -= 2 * s;
    }
    return q;
}

std::vector<double> random_unit_vector(int k, CounterRng& rng) {
    std::vector<double> v(static_cast<std::size_t>(k));
    double norm_sq = 0.0;
    while (norm_sq < 1e-12) {
        norm_sq = 0.0;
        for (auto& x : v) {
            // Box-Muller from the deterministic stream
            const double u1 = std::max(rng.next_double(), 1e-300);
            const double u2 = rng.next_double();
            x = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            norm_sq += x * x;
        }
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& x : v) x *= inv;
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double objective_of(const QuarterIsing& q, const VectorRelaxationState& state) {
    double value = static_cast<double>(q.offset);
    for (std::size_t i = 0; i < q.fields.size(); ++i) {
        if (q.fields[i] != 0)
            value += static_cast<double>(q.fields[i]) * dot(state.truth, state.vectors[i]);
        for (const auto& [other, j] : q.couplings[i]) {
            if (other > static_cast<int>(i) + 1)  // count each pair once
                value += static_cast<double>(j) *
                         dot(state.vectors[i],
                             state.vectors[static_cast<std::size_t>(other - 1)]);
        }
    }
    return value / 4.0;
}

// Weak-duality certificate for the relaxation value. With C the symmetric
// pairwise-coefficient matrix over (v0, v1..vn) and any y with
// C - Diag(y) >= 0, every feasible configuration satisfies
// offset + <C, X> >= offset + sum(y). Taking y_r = -|sum_c C_rc v_c| and
// shifting by the smallest eigenvalue of C - Diag(y) yields a bound that is
// valid for ANY state and coincides with the objective at convergence, so
// the returned value never exceeds the relaxation optimum even when the
// descent stalls.
double certified_value(const QuarterIsing& q, const VectorRelaxationState& state) {
    std::vector<int> active;  // variables touched by the residual
    for (std::size_t i = 0; i < q.fields.size(); ++i)
        if (q.fields[i] != 0 || !q.couplings[i].empty())
            active.push_back(static_cast<int>(i) + 1);
    const auto rows = static_cast<Eigen::Index>(active.size()) + 1;
    std::vector<int> row_of(q.fields.size() + 1, -1);
    row_of[0] = 0;
    for (std::size_t r = 0; r < active.size(); ++r)
        row_of[static_cast<std::size_t>(active[r])] = static_cast<int>(r) + 1;

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(rows, rows);
    for (int var : active) {
        const auto idx = static_cast<std::size_t>(var - 1);
        const auto row = row_of[static_cast<std::size_t>(var)];
        if (q.fields[idx] != 0) {
            c(0, row) = static_cast<double>(q.fields[idx]) / 2.0;
            c(row, 0) = c(0, row);
        }
        for (const auto& [other, j] : q.couplings[idx])
            c(row, row_of[static_cast<std::size_t>(other)]) +=
                static_cast<double>(j) / 2.0;
    }

    const auto k = static_cast<std::size_t>(state.k);
    std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
    double y_sum = 0.0;
    std::vector<double> product(k);
    auto vector_at = [&](Eigen::Index row) -> const std::vector<double>& {
        return row == 0 ? state.truth
                        : state.vectors[static_cast<std::size_t>(active[row - 1] - 1)];
    };
    for (Eigen::Index r = 0; r < rows; ++r) {
        std::fill(product.begin(), product.end(), 0.0);
        for (Eigen::Index col = 0; col < rows; ++col) {
            if (c(r, col) == 0.0) continue;
            const std::vector<double>& v = vector_at(col);
            for (std::size_t d = 0; d < k; ++d) product[d] += c(r, col) * v[d];
        }
        double norm_sq = 0.0;
        for (double p : product) norm_sq += p * p;
        y[static_cast<std::size_t>(r)] = -std::sqrt(norm_sq);
        y_sum += y[static_cast<std::size_t>(r)];
    }
    for (Eigen::Index r = 0; r < rows; ++r) c(r, r) -= y[static_cast<std::size_t>(r)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c, Eigen::EigenvaluesOnly);
    const double lambda_min = solver.eigenvalues()(0);
    const double value_quarters =
        static_cast<double>(q.offset) + y_sum +
        static_cast<double>(rows) * std::min(0.0, lambda_min);
    return value_quarters / 4.0;
}

}  // namespace

MixingBound mixing_lower_bound(const ResidualFormula& residual, CounterRng& rng,
                               const MixingOptions& options) {
    if (residual.empty())
        throw InvalidArgument("mixing bound requires a nonempty residual formula");
    const int n = residual.n;
    const int k = options.k > 0
                      ? options.k
                      : static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;

    QuarterIsing q = residual_ising(residual);

    VectorRelaxationState state;
    state.k = k;
    state.truth = random_unit_vector(k, rng);
    state.vectors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) state.vectors.push_back(random_unit_vector(k, rng));

    std::vector<double> gradient(static_cast<std::size_t>(k));
    auto update_towards = [&](std::vector<double>& v) {
        double norm_sq = 0.0;
        for (double g : gradient) norm_sq += g * g;
        if (norm_sq < 1e-24) return;  // isolated coordinate, leave unchanged
        const double inv = -1.0 / std::sqrt(norm_sq);
        for (std::size_t d = 0; d < v.size(); ++d) v[d] = gradient[d] * inv;
    };

    double objective = objective_of(q, state);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        // truth direction first, then each spin vector
        std::fill(gradient.begin(), gradient.end(), 0.0);
        for (std::size_t i = 0; i < q.fields.size(); ++i)
            if (q.fields[i] != 0)
                for (int d = 0; d < k; ++d)
                    gradient[static_cast<std::size_t>(d)] +=
                        static_cast<double>(q.fields[i]) *
                        state.vectors[i][static_cast<std::size_t>(d)];
        update_towards(state.truth);

        for (int i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (q.fields[idx] == 0 && q.couplings[idx].empty()) continue;
            std::fill(gradient.begin(), gradient.end(), 0.0);
            if (q.fields[idx] != 0)
                for (int d = 0; d < k; ++d)
                    gradient[static_cast<std::size_t>(d)] +=
                        static_cast<double>(q.fields[idx]) *
                        state.truth[static_cast<std::size_t>(d)];
            for (const auto& [other, j] : q.couplings[idx])
                for (int d = 0; d < k; ++d)
                    gradient[static_cast<std::size_t>(d)] +=
                        static_cast<double>(j) *
                        state.vectors[static_cast<std::size_t>(other - 1)]
                                     [static_cast<std::size_t>(d)];
            update_towards(state.vectors[idx]);
        }

        const double next = objective_of(q, state);
        const double decrease = objective - next;
        objective = next;
        if (decrease < options.tol * std::max(1.0, std::abs(objective))) break;
    }

    // the certificate equals the descent objective at convergence and stays
    // a valid lower bound when the sweeps stop short
    state.objective = certified_value(q, state);
    MixingBound result;
    result.state = std::move(state);
    result.bound =
        std::max(0, static_cast<int>(std::ceil(result.state.objective - 1e-6)));
    return result;
}

MixingBound mixing_lower_bound(const Instance& inst,
                               const PartialAssignment& partial, CounterRng& rng,
                               const MixingOptions& options) {
    int falsified = 0;
    ResidualFormula residual = residual_under(inst, partial, falsified);
    return mixing_lower_bound(residual, rng, options);
}

Assignment round_assignment(const VectorRelaxationState& state,
                            const Instance& inst, int rounds, CounterRng& rng,
                            std::uint64_t* evaluations, int* best_unsatisfied) {
    if (rounds <= 0) throw InvalidArgument("rounding needs at least one round");
    Assignment best{inst.n, 0};
    int best_unsat = inst.m() + 1;
    for (int r = 0; r < rounds; ++r) {
        const std::vector<double> direction = random_unit_vector(state.k, rng);
        const bool truth_side = dot(state.truth, direction) >= 0.0;
        Assignment candidate{inst.n, 0};
        for (int v = 1; v <= inst.n; ++v) {
            const bool var_side =
                dot(state.vectors[static_cast<std::size_t>(v - 1)], direction) >= 0.0;
            if (var_side != truth_side)
                candidate.bits |= (std::uint64_t{1} << (v - 1));  // false
        }
        const int unsat = inst.m() - count_satisfied(inst, candidate);
        if (evaluations) ++(*evaluations);
        if (unsat < best_unsat) {
            best_unsat = unsat;
            best = candidate;
        }
    }
    if (best_unsatisfied) *best_unsatisfied = best_unsat;
    return best;
}

}  // namespace m2s
