#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace m2s {

using ComplexVec = std::vector<std::complex<double>>;

// Derivative evaluation: f = dy/dt at (t, y).
using OdeRhs = std::function<void(double t, const ComplexVec& y, ComplexVec& f)>;

// Called at the start point and after every accepted step.
using OdeObserver = std::function<void(double t, const ComplexVec& y)>;

struct IntegratorOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double safety = 0.9;
    double beta = 0.04;  // PI stabilization exponent
    double max_growth = 6.0;
    double max_shrink = 3.0;
    std::uint64_t max_steps = 50'000'000;
};

struct IntegratorStats {
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t rhs_evaluations = 0;
};

// Explicit Runge-Kutta of order 8 (Dormand-Prince 8(5,3) pair, the classic
// Hairer-Norsett-Wanner coefficients) with the embedded 5th/3rd-order error
// estimate and step-size controller. Integrates y' = f(t, y) from t0 to t1
// (t1 > t0), advancing `y` in place.
//
// Throws StepLimitError when max_steps is exhausted or the step size
// underflows.
IntegratorStats integrate_dop853(const OdeRhs& rhs, double t0, double t1,
                                 ComplexVec& y, const IntegratorOptions& options,
                                 const OdeObserver& observer = {});

}  // namespace m2s
