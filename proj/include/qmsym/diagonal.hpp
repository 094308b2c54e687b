#pragma once

// Diagonal and permutation operators stored in O(dim). They plug into the
// same free-function surface as DenseOperator, so the BQS templates accept
// them for eigenbasis models too large to treat densely.

#include <cmath>
#include <sstream>
#include <vector>

#include "qmsym/linalg.hpp"

namespace qmsym {

class DiagonalOperator {
  public:
    explicit DiagonalOperator(Vector diagonal, OperatorKind kind = OperatorKind::general)
        : diag_(std::move(diagonal)), kind_(kind) {
        if (diag_.size() < 1) {
            throw DimensionError("DiagonalOperator: dimension must be at least 1");
        }
        if (kind_ == OperatorKind::hermitian && !(hermiticity_defect() <= kHermitianTol)) {
            throw KindError("DiagonalOperator tagged hermitian has complex entries");
        }
        if (kind_ == OperatorKind::unitary) {
            const double defect = (diag_.cwiseAbs2().array() - 1.0).matrix().norm();
            if (!(defect <= kUnitaryTol * std::sqrt(static_cast<double>(dim())))) {
                throw KindError("DiagonalOperator tagged unitary has entries off the unit circle");
            }
        }
    }

    static DiagonalOperator real(const std::vector<double> &d) {
        Vector v(static_cast<Index>(d.size()));
        for (std::size_t k = 0; k < d.size(); ++k) {
            v(static_cast<Index>(k)) = d[k];
        }
        return DiagonalOperator(std::move(v), OperatorKind::hermitian);
    }

    [[nodiscard]] Index dim() const { return diag_.size(); }
    [[nodiscard]] const Vector &diagonal() const { return diag_; }
    [[nodiscard]] OperatorKind kind() const { return kind_; }

    /// Relative ‖D − D†‖_F / ‖D‖_F.
    [[nodiscard]] double hermiticity_defect() const {
        const double scale = diag_.norm();
        const double defect = 2.0 * diag_.imag().norm();
        return scale > 0.0 ? defect / scale : defect;
    }

    [[nodiscard]] ComplexVector apply(const ComplexVector &v) const {
        if (v.dim() != dim()) {
            throw DimensionError("DiagonalOperator::apply: dimension mismatch");
        }
        return ComplexVector(diag_.cwiseProduct(v.amplitudes()));
    }

    [[nodiscard]] double expectation(const ComplexVector &v) const {
        if (v.dim() != dim()) {
            throw DimensionError("DiagonalOperator::expectation: dimension mismatch");
        }
        return v.amplitudes().cwiseAbs2().dot(diag_.real());
    }

    [[nodiscard]] DenseOperator to_dense() const {
        return DenseOperator(Matrix(diag_.asDiagonal()), kind_);
    }

  private:
    Vector diag_;
    OperatorKind kind_;
};

/// Permutation unitary sending basis ket k to basis ket image[k].
class PermutationOperator {
  public:
    explicit PermutationOperator(std::vector<Index> image) : image_(std::move(image)) {
        std::vector<bool> hit(image_.size(), false);
        for (Index target : image_) {
            if (target < 0 || target >= dim() || hit[static_cast<std::size_t>(target)]) {
                throw PreconditionError("PermutationOperator: image is not a bijection");
            }
            hit[static_cast<std::size_t>(target)] = true;
        }
    }

    [[nodiscard]] Index dim() const { return static_cast<Index>(image_.size()); }
    [[nodiscard]] const std::vector<Index> &image() const { return image_; }

    [[nodiscard]] ComplexVector apply(const ComplexVector &v) const {
        if (v.dim() != dim()) {
            throw DimensionError("PermutationOperator::apply: dimension mismatch");
        }
        Vector out(v.dim());
        for (Index k = 0; k < dim(); ++k) {
            out(image_[static_cast<std::size_t>(k)]) = v[k];
        }
        return ComplexVector(std::move(out));
    }

    [[nodiscard]] PermutationOperator adjoint() const {
        std::vector<Index> inverse(image_.size());
        for (std::size_t k = 0; k < image_.size(); ++k) {
            inverse[static_cast<std::size_t>(image_[k])] = static_cast<Index>(k);
        }
        return PermutationOperator(std::move(inverse));
    }

    [[nodiscard]] DenseOperator to_dense() const { return DenseOperator::permutation(image_); }

  private:
    std::vector<Index> image_;
};

inline ComplexVector apply(const DiagonalOperator &op, const ComplexVector &v) { return op.apply(v); }
inline ComplexVector apply(const PermutationOperator &op, const ComplexVector &v) { return op.apply(v); }

inline double expectation(const DiagonalOperator &op, const ComplexVector &v) {
    return op.expectation(v);
}

inline double hermiticity_defect(const DiagonalOperator &op) { return op.hermiticity_defect(); }

/// exp(−iθD) entrywise.
inline DiagonalOperator propagator(const DiagonalOperator &h, double theta) {
    if (!(h.hermiticity_defect() <= kHermitianTol)) {
        throw KindError("propagator: diagonal operator is not hermitian");
    }
    Vector u(h.dim());
    for (Index k = 0; k < h.dim(); ++k) {
        u(k) = std::polar(1.0, -theta * h.diagonal()(k).real());
    }
    return DiagonalOperator(std::move(u), OperatorKind::unitary);
}

/// A validated bijection is exactly unitary.
inline double unitarity_defect(const PermutationOperator &) { return 0.0; }

/// ‖P·D·P† − D′‖_F: P·D·P† is diagonal with D[k] moved to slot image[k].
inline double conjugation_residual(const PermutationOperator &s, const DiagonalOperator &h,
                                   const DiagonalOperator &h_prime) {
    if (s.dim() != h.dim() || h.dim() != h_prime.dim()) {
        throw DimensionError("conjugation_residual: dimension mismatch");
    }
    double sq = 0.0;
    for (Index k = 0; k < s.dim(); ++k) {
        const Index to = s.image()[static_cast<std::size_t>(k)];
        sq += std::norm(h.diagonal()(k) - h_prime.diagonal()(to));
    }
    return std::sqrt(sq);
}

/// ‖[D, P]‖_F = ‖D·P − P·D‖_F.
inline double commutator_norm(const DiagonalOperator &h, const PermutationOperator &s) {
    return conjugation_residual(s, h, h);
}

} // namespace qmsym
