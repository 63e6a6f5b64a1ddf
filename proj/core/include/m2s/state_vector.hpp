#pragma once

#include <complex>
#include <vector>

namespace m2s {

using Amplitude = std::complex<double>;

// 2^n complex amplitudes over the computational basis; variable i maps to
// bit i-1 of the basis index.
struct StateVector {
    int n = 0;
    std::vector<Amplitude> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

StateVector uniform_superposition(int n);

double norm(const StateVector& state);

// Transverse-field driver action: out[k] = -sum_i in[k ^ (1 << i)].
// The operator is never materialized.
void apply_driver(const StateVector& in, StateVector& out);
StateVector apply_driver(const StateVector& in);

}  // namespace m2s
