#include "m2s/state_vector.hpp"

#include <cmath>

#include "m2s/errors.hpp"

namespace m2s {

StateVector uniform_superposition(int n) {
    StateVector psi;
    psi.n = n;
    const std::size_t dim = std::size_t{1} << n;
    psi.amplitudes.assign(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return psi;
}

double norm(const StateVector& state) {
    double sum = 0.0;
    for (const Amplitude& a : state.amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

void apply_driver(const StateVector& in, StateVector& out) {
    const std::size_t dim = in.dim();
    if (dim != (std::size_t{1} << in.n))
        throw InvalidArgument("state dimension must be 2^n");
    out.n = in.n;
    out.amplitudes.assign(dim, Amplitude(0.0, 0.0));
    for (int bit = 0; bit < in.n; ++bit) {
        const std::size_t flip = std::size_t{1} << bit;
        for (std::size_t k = 0; k < dim; ++k)
            out.amplitudes[k] -= in.amplitudes[k ^ flip];
    }
}

StateVector apply_driver(const StateVector& in) {
    StateVector out;
    apply_driver(in, out);
    return out;
}

}  // namespace m2s
