#include "m2s/dynamics.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "m2s/errors.hpp"

namespace m2s {

namespace {

// Schrodinger right-hand side: f = -i (a*D + b*E) y with
// (D y)[k] = -sum_i y[k ^ (1 << i)].
class SchrodingerRhs {
public:
    SchrodingerRhs(const EnergyTable& table, const BlendFunction& blend)
        : table_(table), blend_(blend), driver_sum_(table.energies.size()) {}

    void operator()(double t, const ComplexVec& y, ComplexVec& f) {
        const auto [a, b] = blend_(t);
        const std::size_t dim = y.size();
        const int n = table_.n;
        for (std::size_t k = 0; k < dim; ++k)
            driver_sum_[k] = std::complex<double>(0.0, 0.0);
        for (int bit = 0; bit < n; ++bit) {
            const std::size_t flip = std::size_t{1} << bit;
            for (std::size_t k = 0; k < dim; ++k) driver_sum_[k] += y[k ^ flip];
        }
        for (std::size_t k = 0; k < dim; ++k) {
            // a*D y + b*E y, then multiply by -i
            const std::complex<double> hy =
                -a * driver_sum_[k] +
                b * static_cast<double>(table_.energies[k]) * y[k];
            f[k] = std::complex<double>(hy.imag(), -hy.real());
        }
    }

private:
    const EnergyTable& table_;
    const BlendFunction& blend_;
    ComplexVec driver_sum_;
};

double norm_of(const ComplexVec& y) {
    double sum = 0.0;
    for (const auto& a : y) sum += std::norm(a);
    return std::sqrt(sum);
}

}  // namespace

EvolveStats evolve(const EnergyTable& table, const BlendFunction& blend,
                   double t0, double t1, StateVector& psi,
                   const EvolveOptions& options, const StepObserver& observer) {
    if (psi.dim() != table.energies.size())
        throw InvalidArgument("state dimension does not match energy table");
    SchrodingerRhs rhs(table, blend);
    EvolveStats stats;

    StateVector view;  // one reusable buffer for all observations
    view.n = psi.n;
    auto on_step = [&](double t, const ComplexVec& y) {
        const double drift = std::abs(norm_of(y) - 1.0);
        stats.max_norm_drift = std::max(stats.max_norm_drift, drift);
        if (drift > options.norm_tolerance)
            throw NormDriftError("norm drift " + std::to_string(drift) +
                                 " exceeds tolerance at t = " + std::to_string(t));
        if (observer) {
            view.amplitudes = y;
            observer(t, view);
        }
    };

    IntegratorOptions iopts;
    iopts.rtol = options.rtol;
    iopts.atol = options.atol;
    iopts.max_steps = options.max_steps;
    IntegratorStats is = integrate_dop853(
        [&rhs](double t, const ComplexVec& y, ComplexVec& f) { rhs(t, y, f); }, t0,
        t1, psi.amplitudes, iopts, on_step);
    stats.step_count = is.accepted;
    stats.rhs_evaluations = is.rhs_evaluations;
    return stats;
}

std::vector<TrajectoryPoint> evolve_trajectory(const EnergyTable& table,
                                               const BlendFunction& blend,
                                               double t0, double t1,
                                               const EvolveOptions& options) {
    StateVector psi = uniform_superposition(table.n);
    std::vector<TrajectoryPoint> trajectory;
    evolve(table, blend, t0, t1, psi, options,
           [&trajectory](double t, const StateVector& s) {
               trajectory.push_back({t, s});
           });
    return trajectory;
}

double hamiltonian_expectation(const EnergyTable& table, double gamma,
                               const StateVector& psi) {
    StateVector driven;
    apply_driver(psi, driven);
    double value = 0.0;
    const std::size_t dim = psi.dim();
    for (std::size_t k = 0; k < dim; ++k) {
        const std::complex<double> hk =
            gamma * driven.amplitudes[k] +
            static_cast<double>(table.energies[k]) * psi.amplitudes[k];
        value += (std::conj(psi.amplitudes[k]) * hk).real();
    }
    return value;
}

QwResult qw_average_probability(const Instance& inst, const EnergyTable& table,
                                const WalkConfig& config,
                                const EvolveOptions& options) {
    if (!(config.gamma > 0.0)) throw InvalidArgument("hopping rate must be positive");
    if (!(config.window.width > 0.0))
        throw InvalidArgument("window width must be positive");

    const std::uint64_t ground = table.ground_index;
    StateVector psi = uniform_superposition(table.n);
    QwResult result;
    result.instance_id = inst.id;
    result.gamma = config.gamma;

    const BlendFunction blend = constant_blend(config.gamma);
    if (config.window.t_start > 0.0) {
        EvolveStats pre = evolve(table, blend, 0.0, config.window.t_start, psi, options);
        result.step_count += pre.step_count;
    }

    double accumulated = 0.0;
    double prev_t = config.window.t_start;
    double prev_p = 0.0;
    bool first = true;
    auto accumulate = [&](double t, const StateVector& s) {
        const double p = std::norm(s.amplitudes[ground]);
        if (!first) accumulated += (t - prev_t) * 0.5 * (p + prev_p);
        first = false;
        prev_t = t;
        prev_p = p;
    };
    EvolveStats run = evolve(table, blend, config.window.t_start,
                             config.window.t_start + config.window.width, psi,
                             options, accumulate);
    result.step_count += run.step_count;
    result.p_avg = accumulated / config.window.width;
    return result;
}

double qw_infinite_time_average(const EnergyTable& table, double gamma) {
    if (table.n > kDenseDiagMaxN)
        throw BudgetExceeded("dense diagonalization limited to n <= 14, got n = " +
                             std::to_string(table.n));
    const std::size_t dim = table.energies.size();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        H(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
            static_cast<double>(table.energies[k]);
        for (int bit = 0; bit < table.n; ++bit) {
            const std::size_t j = k ^ (std::size_t{1} << bit);
            H(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = -gamma;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success)
        throw Error("eigendecomposition failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& evecs = solver.eigenvectors();

    // overlap of each eigenvector with the uniform initial state
    const double amp0 = 1.0 / std::sqrt(static_cast<double>(dim));
    Eigen::VectorXd initial_overlap =
        evecs.colwise().sum().transpose() * amp0;

    const double scale = std::max({1.0, std::abs(evals(0)),
                                   std::abs(evals(evals.size() - 1))});
    const double cluster_tol = 1e-9 * scale;
    const auto g = static_cast<Eigen::Index>(table.ground_index);

    double total = 0.0;
    Eigen::Index begin = 0;
    while (begin < evals.size()) {
        Eigen::Index end = begin + 1;
        while (end < evals.size() && evals(end) - evals(end - 1) <= cluster_tol)
            ++end;
        double projected = 0.0;
        for (Eigen::Index k = begin; k < end; ++k)
            projected += evecs(g, k) * initial_overlap(k);
        total += projected * projected;
        begin = end;
    }
    return total;
}

double aqc_probability(const Instance& inst, const EnergyTable& table,
                       const AnnealSchedule& schedule,
                       const EvolveOptions& options) {
    (void)inst;
    if (!(schedule.total_time > 0.0))
        throw InvalidArgument("anneal duration must be positive");
    StateVector psi = uniform_superposition(table.n);
    evolve(table, linear_anneal_blend(schedule), 0.0, schedule.total_time, psi,
           options);
    return std::norm(psi.amplitudes[table.ground_index]);
}

AqcResult find_t99(const ProbabilityProbe& probe, const T99Options& options) {
    AqcResult result;
    auto sample = [&](double t) -> std::optional<double> {
        std::optional<double> p = probe(t);
        if (p) result.probe_log.push_back({t, *p});
        return p;
    };

    std::optional<double> p0 = sample(options.t_init);
    if (!p0) return result;

    double low = 0.0, high = 0.0;
    if (*p0 < options.target) {
        double t = options.t_init;
        double p = *p0;
        int doublings = 0;
        while (p < options.target) {
            if (doublings >= options.max_doublings) return result;
            ++doublings;
            low = t;
            t *= 2.0;
            std::optional<double> next = sample(t);
            if (!next) return result;
            p = *next;
        }
        high = t;
    } else {
        double t = options.t_init;
        double p = *p0;
        int halvings = 0;
        while (p >= options.target) {
            if (halvings >= options.max_doublings) return result;
            ++halvings;
            high = t;
            t *= 0.5;
            std::optional<double> next = sample(t);
            if (!next) return result;
            p = *next;
        }
        low = t;
    }

    // invariant: P(low) < target <= P(high)
    while (high / low > options.bracket_ratio) {
        const double mid = 0.5 * (low + high);
        std::optional<double> p = sample(mid);
        if (!p) {
            result.bracket = {low, high};
            return result;
        }
        if (*p >= options.target)
            high = mid;
        else
            low = mid;
    }
    result.bracket = {low, high};
    result.t99 = high;
    return result;
}

AqcResult find_t99(const Instance& inst, const EnergyTable& table,
                   const EvolveOptions& evolve_options, const T99Options& options) {
    std::uint64_t steps = 0;
    ProbabilityProbe probe = [&](double t_f) -> std::optional<double> {
        try {
            StateVector psi = uniform_superposition(table.n);
            EvolveStats stats =
                evolve(table, linear_anneal_blend(AnnealSchedule{t_f}), 0.0, t_f,
                       psi, evolve_options);
            steps += stats.step_count;
            return std::norm(psi.amplitudes[table.ground_index]);
        } catch (const StepLimitError&) {
            return std::nullopt;  // probe too long for the step budget
        } catch (const NormDriftError&) {
            return std::nullopt;  // probe too long for the accuracy budget
        }
    };
    AqcResult result = find_t99(probe, options);
    result.instance_id = inst.id;
    result.step_count = steps;
    return result;
}

}  // namespace m2s
