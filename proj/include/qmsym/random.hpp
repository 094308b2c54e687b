#pragma once

// Seeded random operators and states for negative controls and property tests.

#include <cstdint>
#include <random>

#include "qmsym/linalg.hpp"

namespace qmsym {

using Rng = std::mt19937_64;

inline Matrix gaussian_matrix(Index rows, Index cols, Rng &rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = nd(rng);
            const double im = nd(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

inline DenseOperator random_hermitian(Index dim, Rng &rng) {
    const Matrix g = gaussian_matrix(dim, dim, rng);
    return DenseOperator(0.5 * (g + g.adjoint()), OperatorKind::hermitian);
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal absorbed into Q.
inline DenseOperator random_unitary(Index dim, Rng &rng) {
    const Matrix g = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) {
            q.col(j) *= d / std::abs(d);
        }
    }
    return DenseOperator(std::move(q), OperatorKind::unitary);
}

inline ComplexVector random_state(Index dim, Rng &rng) {
    return ComplexVector(gaussian_matrix(dim, 1, rng).col(0)).normalized();
}

/// Columns of a random unitary as an orthonormal basis.
inline std::vector<ComplexVector> random_orthonormal_basis(Index dim, Rng &rng) {
    const DenseOperator u = random_unitary(dim, rng);
    std::vector<ComplexVector> basis;
    basis.reserve(static_cast<std::size_t>(dim));
    for (Index j = 0; j < dim; ++j) {
        basis.emplace_back(u.matrix().col(j));
    }
    return basis;
}

} // namespace qmsym
