#pragma once

// Dense-matrix oracles for the dynamics tests, built independently of the
// library's implicit operators: the driver comes from explicit sigma_x
// Kronecker products and the problem diagonal from the logical evaluator.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "logic_oracle.hpp"
#include "m2s/instance.hpp"

namespace m2s::test {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXcd;

// -sum_i sigma_x^(i) assembled by Kronecker products with identities.
inline DenseMatrix dense_driver(int n) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    DenseMatrix sx(2, 2);
    sx << 0, 1, 1, 0;
    DenseMatrix driver = DenseMatrix::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        DenseMatrix term = DenseMatrix::Identity(1, 1);
        // qubit q occupies bit q: kron order runs from the highest bit down
        for (int b = n - 1; b >= 0; --b) {
            const DenseMatrix& factor =
                (b == q) ? sx : DenseMatrix::Identity(2, 2);
            DenseMatrix next(term.rows() * factor.rows(), term.cols() * factor.cols());
            for (Eigen::Index i = 0; i < term.rows(); ++i)
                for (Eigen::Index j = 0; j < term.cols(); ++j)
                    next.block(i * factor.rows(), j * factor.cols(), factor.rows(),
                               factor.cols()) = term(i, j) * factor;
            term = next;
        }
        driver -= term;
    }
    return driver;
}

inline DenseMatrix dense_problem(const Instance& inst) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << inst.n);
    DenseMatrix h = DenseMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        h(k, k) = inst.m() -
                  oracle_count_satisfied(inst, static_cast<std::uint64_t>(k));
    return h;
}

struct Propagator {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver;

    explicit Propagator(const DenseMatrix& h) : solver(h) {}

    DenseVector apply(const DenseVector& psi0, double t) const {
        const Eigen::VectorXd& evals = solver.eigenvalues();
        const DenseMatrix& evecs = solver.eigenvectors();
        Eigen::VectorXcd phases(evals.size());
        for (Eigen::Index i = 0; i < evals.size(); ++i)
            phases(i) = std::exp(std::complex<double>(0.0, -evals(i) * t));
        return evecs * (phases.asDiagonal() * (evecs.transpose() * psi0));
    }
};

inline DenseVector dense_uniform(int n) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    return DenseVector::Constant(dim, std::complex<double>(
                                          1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

}  // namespace m2s::test
