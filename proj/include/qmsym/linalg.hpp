#pragma once

/**
 * @file
 * Dense complex linear algebra used by every other part of the library:
 * state vectors, tagged operators, Kronecker products, Hermitian
 * exponentials and the Frobenius-norm diagnostics used for certification.
 */

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qmsym/errors.hpp"

namespace qmsym {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;

/// Relative anti-Hermitian part ‖M − M†‖_F / ‖M‖_F (0 for the zero matrix).
inline double hermiticity_defect(const Matrix &m) {
    const double scale = m.norm();
    const double diff = (m - m.adjoint()).norm();
    return scale > 0.0 ? diff / scale : diff;
}

/// ‖U†U − I‖_F.
inline double unitarity_defect(const Matrix &u) {
    if (u.rows() != u.cols()) {
        throw DimensionError("unitarity_defect: operator is not square");
    }
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

class ComplexVector {
  public:
    ComplexVector() : amplitudes_(Vector::Zero(1)) {}

    explicit ComplexVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() < 1) {
            throw DimensionError("ComplexVector: dimension must be at least 1");
        }
    }

    static ComplexVector basis(Index dim, Index k) {
        if (k < 0 || k >= dim) {
            throw DimensionError("ComplexVector::basis: index out of range");
        }
        Vector v = Vector::Zero(dim);
        v(k) = 1.0;
        return ComplexVector(std::move(v));
    }

    [[nodiscard]] Index dim() const { return amplitudes_.size(); }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex operator[](Index k) const { return amplitudes_(k); }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }

    [[nodiscard]] bool is_unit(double tol = kNormTol) const {
        return std::abs(norm() - 1.0) <= tol;
    }

    [[nodiscard]] ComplexVector normalized() const {
        const double n = norm();
        if (n == 0.0) {
            throw NumericalError("ComplexVector::normalized: zero vector");
        }
        return ComplexVector(amplitudes_ / n);
    }

    friend bool operator==(const ComplexVector &a, const ComplexVector &b) {
        return a.amplitudes_ == b.amplitudes_;
    }

  private:
    Vector amplitudes_;
};

/// Throws unless |‖v‖ − 1| ≤ tol.
inline void require_unit_norm(const ComplexVector &v, double tol = kNormTol,
                              const char *what = "state vector") {
    if (!v.is_unit(tol)) {
        std::ostringstream os;
        os << what << " is not unit norm (norm = " << v.norm() << ")";
        throw PreconditionError(os.str());
    }
}

enum class OperatorKind { general, hermitian, unitary };

inline const char *to_string(OperatorKind k) {
    switch (k) {
    case OperatorKind::general: return "general";
    case OperatorKind::hermitian: return "hermitian";
    case OperatorKind::unitary: return "unitary";
    }
    return "general";
}

/// Square complex matrix with an advisory kind tag. The tag is verified when
/// the operator is constructed; consumers still recheck the property they
/// depend on.
class DenseOperator {
  public:
    DenseOperator() : entries_(Matrix::Zero(1, 1)) {}

    explicit DenseOperator(Matrix entries, OperatorKind kind = OperatorKind::general)
        : DenseOperator(std::move(entries), kind, default_tol(kind)) {}

    DenseOperator(Matrix entries, OperatorKind kind, double tol)
        : entries_(std::move(entries)), kind_(kind) {
        if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
            throw DimensionError("DenseOperator: matrix must be square and non-empty");
        }
        verify_kind(tol);
    }

    static DenseOperator identity(Index dim) {
        return DenseOperator(Matrix::Identity(dim, dim), OperatorKind::unitary);
    }

    static DenseOperator zero(Index dim) {
        return DenseOperator(Matrix::Zero(dim, dim), OperatorKind::hermitian);
    }

    static DenseOperator diagonal(const std::vector<double> &d) {
        Matrix m = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
        }
        return DenseOperator(std::move(m), OperatorKind::hermitian);
    }

    /// Permutation unitary sending basis ket k to basis ket image[k].
    static DenseOperator permutation(const std::vector<Index> &image) {
        const auto dim = static_cast<Index>(image.size());
        std::vector<bool> hit(image.size(), false);
        Matrix m = Matrix::Zero(dim, dim);
        for (Index k = 0; k < dim; ++k) {
            const Index target = image[static_cast<std::size_t>(k)];
            if (target < 0 || target >= dim || hit[static_cast<std::size_t>(target)]) {
                throw PreconditionError("DenseOperator::permutation: image is not a bijection");
            }
            hit[static_cast<std::size_t>(target)] = true;
            m(target, k) = 1.0;
        }
        return DenseOperator(std::move(m), OperatorKind::unitary);
    }

    [[nodiscard]] Index dim() const { return entries_.rows(); }
    [[nodiscard]] const Matrix &matrix() const { return entries_; }
    [[nodiscard]] OperatorKind kind() const { return kind_; }

    [[nodiscard]] DenseOperator adjoint() const {
        return DenseOperator(entries_.adjoint(), kind_, kLoose);
    }

    [[nodiscard]] ComplexVector apply(const ComplexVector &v) const {
        if (v.dim() != dim()) {
            throw DimensionError("DenseOperator::apply: dimension mismatch");
        }
        return ComplexVector(entries_ * v.amplitudes());
    }

    /// Real part of ⟨v|M|v⟩.
    [[nodiscard]] double expectation(const ComplexVector &v) const {
        if (v.dim() != dim()) {
            throw DimensionError("DenseOperator::expectation: dimension mismatch");
        }
        return v.amplitudes().dot(entries_ * v.amplitudes()).real();
    }

    friend DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
        if (a.dim() != b.dim()) {
            throw DimensionError("DenseOperator product: dimension mismatch");
        }
        return DenseOperator(a.entries_ * b.entries_);
    }

  private:
    // Used where the kind is inherited from an operator that already passed.
    static constexpr double kLoose = 1e30;

    static double default_tol(OperatorKind kind) {
        return kind == OperatorKind::unitary ? kUnitaryTol : kHermitianTol;
    }

    void verify_kind(double tol) const {
        if (kind_ == OperatorKind::hermitian) {
            const double defect = hermiticity_defect(entries_);
            if (!(defect <= tol)) {
                std::ostringstream os;
                os << "operator tagged hermitian has relative defect " << defect;
                throw KindError(os.str());
            }
        } else if (kind_ == OperatorKind::unitary) {
            const double defect = unitarity_defect(entries_);
            if (!(defect <= tol * std::sqrt(static_cast<double>(dim())))) {
                std::ostringstream os;
                os << "operator tagged unitary has defect " << defect;
                throw KindError(os.str());
            }
        }
    }

    Matrix entries_;
    OperatorKind kind_ = OperatorKind::general;
};

inline double unitarity_defect(const DenseOperator &u) { return unitarity_defect(u.matrix()); }

/// Kronecker product of matrices, left factor outermost.
inline Matrix kronecker(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Vector kronecker(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline DenseOperator tensor_product(const DenseOperator &a, const DenseOperator &b) {
    OperatorKind kind = OperatorKind::general;
    if (a.kind() == b.kind()) {
        kind = a.kind();
    }
    // Both factors passed their own check; the product inherits the property.
    return DenseOperator(kronecker(a.matrix(), b.matrix()), kind, 1e30);
}

inline ComplexVector tensor_product(const ComplexVector &a, const ComplexVector &b) {
    return ComplexVector(kronecker(a.amplitudes(), b.amplitudes()));
}

/// Either operand type, for callers that only know the kinds at run time.
using LinearObject = std::variant<ComplexVector, DenseOperator>;

inline LinearObject tensor_product(const LinearObject &a, const LinearObject &b) {
    if (a.index() != b.index()) {
        throw KindError("tensor_product: cannot combine a vector with an operator");
    }
    if (const auto *va = std::get_if<ComplexVector>(&a)) {
        return tensor_product(*va, std::get<ComplexVector>(b));
    }
    return tensor_product(std::get<DenseOperator>(a), std::get<DenseOperator>(b));
}

/// Eigendecomposition of a Hermitian matrix with failure diagnostics.
struct HermitianEigensystem {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

inline HermitianEigensystem hermitian_eigensystem(const DenseOperator &h) {
    const Matrix &m = h.matrix();
    if (!m.allFinite()) {
        throw NumericalError("hermitian_eigensystem: operator has non-finite entries");
    }
    const double defect = hermiticity_defect(m);
    if (!(defect <= kHermitianTol)) {
        std::ostringstream os;
        os << "hermitian_eigensystem: operator is not hermitian (relative defect "
           << defect << ")";
        throw KindError(os.str());
    }
    // Solve on the exactly Hermitian part so the eigenbasis is orthonormal.
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "hermitian_eigensystem: eigensolver failed (dim " << m.rows()
           << ", ‖H‖_F " << m.norm() << ", max |h_ij| " << m.cwiseAbs().maxCoeff() << ")";
        throw NumericalError(os.str());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// exp(−iθH) from the eigendecomposition H = V·D·V†.
inline DenseOperator hermitian_exponential(const HermitianEigensystem &eig, double theta) {
    Vector phases(eig.eigenvalues.size());
    for (Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::polar(1.0, -theta * eig.eigenvalues(k));
    }
    Matrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    return DenseOperator(std::move(u), OperatorKind::unitary);
}

inline DenseOperator hermitian_exponential(const DenseOperator &h, double theta) {
    return hermitian_exponential(hermitian_eigensystem(h), theta);
}

inline double commutator_norm(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("commutator_norm: dimension mismatch");
    }
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
}

inline double frobenius_distance(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("frobenius_distance: dimension mismatch");
    }
    return (a.matrix() - b.matrix()).norm();
}

/// ⟨a|b⟩, conjugate-linear in the first argument.
inline Complex overlap(const ComplexVector &a, const ComplexVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("overlap: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

inline double distance(const ComplexVector &a, const ComplexVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("distance: dimension mismatch");
    }
    return (a.amplitudes() - b.amplitudes()).norm();
}

/// |⟨a|b⟩|² for unit vectors.
inline double fidelity(const ComplexVector &a, const ComplexVector &b) {
    return std::norm(overlap(a, b));
}

// Uniform free-function surface shared by dense and structured operators;
// the certification templates are written against these.

inline ComplexVector apply(const DenseOperator &op, const ComplexVector &v) { return op.apply(v); }

inline double expectation(const DenseOperator &op, const ComplexVector &v) {
    return op.expectation(v);
}

inline DenseOperator propagator(const DenseOperator &h, double theta) {
    return hermitian_exponential(h, theta);
}

inline double hermiticity_defect(const DenseOperator &op) { return hermiticity_defect(op.matrix()); }

/// ‖S·H·S† − H′‖_F; S is taken to be unitary so that S† = S⁻¹.
inline double conjugation_residual(const DenseOperator &s, const DenseOperator &h,
                                   const DenseOperator &h_prime) {
    if (s.dim() != h.dim() || h.dim() != h_prime.dim()) {
        throw DimensionError("conjugation_residual: dimension mismatch");
    }
    return (s.matrix() * h.matrix() * s.matrix().adjoint() - h_prime.matrix()).norm();
}

} // namespace qmsym
