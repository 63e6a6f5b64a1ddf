#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "m2s/energy_table.hpp"
#include "m2s/instance.hpp"
#include "m2s/integrator.hpp"
#include "m2s/state_vector.hpp"

namespace m2s {

// Control functions (a, b) weighting driver and problem Hamiltonians at time t.
using BlendFunction = std::function<std::pair<double, double>(double)>;

inline BlendFunction constant_blend(double gamma) {
    return [gamma](double) { return std::pair{gamma, 1.0}; };
}

// Linear anneal schedule: a(t) = 1 - t/t_f, b(t) = t/t_f.
struct AnnealSchedule {
    double total_time = 0.0;

    double a(double t) const { return 1.0 - t / total_time; }
    double b(double t) const { return t / total_time; }
};

inline BlendFunction linear_anneal_blend(const AnnealSchedule& schedule) {
    return [schedule](double t) { return std::pair{schedule.a(t), schedule.b(t)}; };
}

struct EvolveOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    std::uint64_t max_steps = 50'000'000;
    double norm_tolerance = 1e-6;  // hard bound, no renormalization
};

struct EvolveStats {
    std::uint64_t step_count = 0;
    double max_norm_drift = 0.0;
    std::uint64_t rhs_evaluations = 0;
};

using StepObserver = std::function<void(double t, const StateVector& psi)>;

// Integrates i dpsi/dt = [a(t) H_driver + b(t) H_problem] psi in place from
// t0 to t1. The observer fires at t0 and at every accepted step. Throws
// NormDriftError when |norm - 1| exceeds norm_tolerance at an accepted step
// and StepLimitError when the step budget runs out.
EvolveStats evolve(const EnergyTable& table, const BlendFunction& blend,
                   double t0, double t1, StateVector& psi,
                   const EvolveOptions& options, const StepObserver& observer = {});

struct TrajectoryPoint {
    double t = 0.0;
    StateVector psi;
};

// Convenience wrapper that starts from the uniform superposition and records
// every accepted step. Prefer the observer form for long evolutions.
std::vector<TrajectoryPoint> evolve_trajectory(const EnergyTable& table,
                                               const BlendFunction& blend,
                                               double t0, double t1,
                                               const EvolveOptions& options);

// <psi| gamma*H_driver + H_problem |psi>; real up to rounding.
double hamiltonian_expectation(const EnergyTable& table, double gamma,
                               const StateVector& psi);

struct TimeWindow {
    double t_start = 0.0;
    double width = 100.0;
};

struct WalkConfig {
    double gamma = 1.0;
    TimeWindow window;
};

struct QwResult {
    std::string instance_id;
    double gamma = 0.0;
    double p_avg = 0.0;
    std::optional<double> p_infinity;
    std::uint64_t step_count = 0;
};

// Success probability of a quantum walk measured at a uniformly random time
// in the window: trapezoid accumulation of |<ground|psi(t)>|^2 over accepted
// integrator steps.
QwResult qw_average_probability(const Instance& inst, const EnergyTable& table,
                                const WalkConfig& config,
                                const EvolveOptions& options);

inline constexpr int kDenseDiagMaxN = 14;

// Infinite-window average success probability via dense diagonalization of
// gamma*H_driver + H_problem, summing |<ground|P_S|psi0>|^2 over degenerate
// eigenvalue clusters. Throws BudgetExceeded for n > 14.
double qw_infinite_time_average(const EnergyTable& table, double gamma);

// Ground-state probability after a linear anneal of duration schedule.total_time.
double aqc_probability(const Instance& inst, const EnergyTable& table,
                       const AnnealSchedule& schedule, const EvolveOptions& options);

struct ProbePoint {
    double t_f = 0.0;
    double probability = 0.0;
};

struct T99Options {
    double t_init = 1.0;
    int max_doublings = 20;
    double target = 0.99;
    double bracket_ratio = 1.01;
};

struct AqcResult {
    std::string instance_id;
    std::optional<double> t99;  // absent: budget exhausted, most difficult
    std::pair<double, double> bracket{0.0, 0.0};
    std::vector<ProbePoint> probe_log;
    std::uint64_t step_count = 0;
};

// One anneal simulation at duration t_f; nullopt means the probe ran out of
// budget and the search should stop with a not-found result.
using ProbabilityProbe = std::function<std::optional<double>(double t_f)>;

// Doubling/halving bracket search followed by bisection until
// high/low <= bracket_ratio; t99 is the bracket's upper endpoint, so
// P(t99) >= target by construction. Budget exhaustion is reported through
// the missing t99, never an exception.
AqcResult find_t99(const ProbabilityProbe& probe, const T99Options& options);

// Production wrapper around aqc_probability; step-budget overruns in a probe
// are converted into the not-found result.
AqcResult find_t99(const Instance& inst, const EnergyTable& table,
                   const EvolveOptions& evolve_options, const T99Options& options);

}  // namespace m2s
