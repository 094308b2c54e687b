#pragma once

/**
 * @file
 * Operators on a tensor-product space ℋ₁⊗…⊗ℋ_k that are never assembled
 * densely: products ⊗ᵢ Sᵢ of single-factor operators and sums Σᵢ Hᵢ of
 * single-factor terms. Norms of differences are evaluated from the factors.
 */

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "qmsym/linalg.hpp"

namespace qmsym {

class TensorLayout {
  public:
    TensorLayout() = default;

    explicit TensorLayout(std::vector<Index> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) {
            throw DimensionError("TensorLayout: at least one factor required");
        }
        for (Index d : dims_) {
            if (d < 1) {
                throw DimensionError("TensorLayout: factor dimensions must be positive");
            }
        }
    }

    static TensorLayout uniform(std::size_t factors, Index dim) {
        return TensorLayout(std::vector<Index>(factors, dim));
    }

    [[nodiscard]] std::size_t factors() const { return dims_.size(); }
    [[nodiscard]] Index dim(std::size_t i) const { return dims_.at(i); }
    [[nodiscard]] const std::vector<Index> &dims() const { return dims_; }

    [[nodiscard]] Index total() const {
        return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>());
    }

    /// Product of the dimensions of factors before i.
    [[nodiscard]] Index outer(std::size_t i) const {
        return std::accumulate(dims_.begin(), dims_.begin() + static_cast<long>(i), Index{1},
                               std::multiplies<>());
    }

    /// Product of the dimensions of factors after i.
    [[nodiscard]] Index inner(std::size_t i) const {
        return std::accumulate(dims_.begin() + static_cast<long>(i) + 1, dims_.end(), Index{1},
                               std::multiplies<>());
    }

    friend bool operator==(const TensorLayout &, const TensorLayout &) = default;

  private:
    std::vector<Index> dims_;
};

/// (I ⊗ … ⊗ op ⊗ … ⊗ I)·v with op acting on factor i.
inline Vector apply_local(const Matrix &op, std::size_t factor, const TensorLayout &layout,
                          const Vector &v) {
    const Index d = layout.dim(factor);
    if (op.rows() != d || op.cols() != d || v.size() != layout.total()) {
        throw DimensionError("apply_local: dimension mismatch");
    }
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Index outer = layout.outer(factor);
    const Index inner = layout.inner(factor);
    Vector out(v.size());
    for (Index o = 0; o < outer; ++o) {
        Eigen::Map<const RowMajor> in_block(v.data() + o * d * inner, d, inner);
        Eigen::Map<RowMajor> out_block(out.data() + o * d * inner, d, inner);
        out_block.noalias() = op * in_block;
    }
    return out;
}

/// Marginal probability distribution over the basis of one factor.
inline std::vector<double> local_probabilities(const ComplexVector &v, std::size_t factor,
                                               const TensorLayout &layout) {
    if (v.dim() != layout.total()) {
        throw DimensionError("local_probabilities: dimension mismatch");
    }
    const Index d = layout.dim(factor);
    const Index outer = layout.outer(factor);
    const Index inner = layout.inner(factor);
    std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
    for (Index o = 0; o < outer; ++o) {
        for (Index j = 0; j < d; ++j) {
            const Index base = (o * d + j) * inner;
            probs[static_cast<std::size_t>(j)] += v.amplitudes().segment(base, inner).squaredNorm();
        }
    }
    return probs;
}

/// ‖Σ_t ⊗ᵢ X_{t,i}‖_F from the Gram matrix of factor inner products,
/// ⟨A⊗B, C⊗D⟩_F = ⟨A,C⟩_F·⟨B,D⟩_F.
inline double kron_sum_norm(const std::vector<std::vector<Matrix>> &terms) {
    Complex total = 0.0;
    for (const auto &a : terms) {
        for (const auto &b : terms) {
            if (a.size() != b.size()) {
                throw DimensionError("kron_sum_norm: terms have different factor counts");
            }
            Complex prod = 1.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                prod *= a[i].cwiseProduct(b[i].conjugate()).sum();
            }
            total += prod;
        }
    }
    return std::sqrt(std::max(0.0, total.real()));
}

/// ⊗ᵢ Sᵢ over a layout.
class ProductOperator {
  public:
    explicit ProductOperator(std::vector<DenseOperator> factors)
        : factors_(std::move(factors)) {
        std::vector<Index> dims;
        dims.reserve(factors_.size());
        for (const auto &f : factors_) {
            dims.push_back(f.dim());
        }
        layout_ = TensorLayout(std::move(dims));
    }

    static ProductOperator identity(const TensorLayout &layout) {
        std::vector<DenseOperator> f;
        for (Index d : layout.dims()) {
            f.push_back(DenseOperator::identity(d));
        }
        return ProductOperator(std::move(f));
    }

    [[nodiscard]] const TensorLayout &layout() const { return layout_; }
    [[nodiscard]] const std::vector<DenseOperator> &factors() const { return factors_; }
    [[nodiscard]] const DenseOperator &factor(std::size_t i) const { return factors_.at(i); }
    [[nodiscard]] Index dim() const { return layout_.total(); }

    [[nodiscard]] ComplexVector apply(const ComplexVector &v) const {
        Vector out = v.amplitudes();
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            out = apply_local(factors_[i].matrix(), i, layout_, out);
        }
        return ComplexVector(std::move(out));
    }

    [[nodiscard]] ProductOperator adjoint() const {
        std::vector<DenseOperator> f;
        for (const auto &x : factors_) {
            f.push_back(x.adjoint());
        }
        return ProductOperator(std::move(f));
    }

    [[nodiscard]] DenseOperator to_dense() const {
        Matrix m = factors_.front().matrix();
        for (std::size_t i = 1; i < factors_.size(); ++i) {
            m = kronecker(m, factors_[i].matrix());
        }
        return DenseOperator(std::move(m));
    }

    friend ProductOperator operator*(const ProductOperator &a, const ProductOperator &b) {
        if (!(a.layout_ == b.layout_)) {
            throw DimensionError("ProductOperator product: layout mismatch");
        }
        std::vector<DenseOperator> f;
        for (std::size_t i = 0; i < a.factors_.size(); ++i) {
            f.push_back(a.factors_[i] * b.factors_[i]);
        }
        return ProductOperator(std::move(f));
    }

  private:
    std::vector<DenseOperator> factors_;
    TensorLayout layout_;
};

/// Σᵢ (I ⊗ … ⊗ Hᵢ ⊗ … ⊗ I): one term per factor.
class LocalSum {
  public:
    explicit LocalSum(std::vector<DenseOperator> terms) : terms_(std::move(terms)) {
        std::vector<Index> dims;
        for (const auto &t : terms_) {
            dims.push_back(t.dim());
        }
        layout_ = TensorLayout(std::move(dims));
    }

    [[nodiscard]] const TensorLayout &layout() const { return layout_; }
    [[nodiscard]] const std::vector<DenseOperator> &terms() const { return terms_; }
    [[nodiscard]] const DenseOperator &term(std::size_t i) const { return terms_.at(i); }
    [[nodiscard]] Index dim() const { return layout_.total(); }

    [[nodiscard]] ComplexVector apply(const ComplexVector &v) const {
        if (v.dim() != dim()) {
            throw DimensionError("LocalSum::apply: dimension mismatch");
        }
        Vector out = Vector::Zero(v.dim());
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            out += apply_local(terms_[i].matrix(), i, layout_, v.amplitudes());
        }
        return ComplexVector(std::move(out));
    }

    [[nodiscard]] DenseOperator to_dense() const {
        const Index total = dim();
        Matrix m = Matrix::Zero(total, total);
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const Index outer = layout_.outer(i);
            const Index inner = layout_.inner(i);
            m += kronecker(kronecker(Matrix::Identity(outer, outer), terms_[i].matrix()),
                           Matrix::Identity(inner, inner));
        }
        return DenseOperator(std::move(m), OperatorKind::hermitian);
    }

    /// ‖Σᵢ Hᵢ‖_F.
    [[nodiscard]] double norm() const {
        std::vector<std::vector<Matrix>> kron_terms;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            kron_terms.push_back(embedded_factors(i, terms_[i].matrix()));
        }
        return kron_sum_norm(kron_terms);
    }

    /// Factor list I,…,X,…,I with X in slot i.
    [[nodiscard]] std::vector<Matrix> embedded_factors(std::size_t i, const Matrix &x) const {
        std::vector<Matrix> f;
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            f.push_back(j == i ? x : Matrix::Identity(layout_.dim(j), layout_.dim(j)));
        }
        return f;
    }

  private:
    std::vector<DenseOperator> terms_;
    TensorLayout layout_;
};

/// A single-factor observable embedded in a layout.
struct LocalObservable {
    std::size_t factor = 0;
    DenseOperator op;
    TensorLayout layout;
};

inline ComplexVector apply(const ProductOperator &op, const ComplexVector &v) { return op.apply(v); }
inline ComplexVector apply(const LocalSum &op, const ComplexVector &v) { return op.apply(v); }

inline double expectation(const LocalObservable &o, const ComplexVector &v) {
    return v.amplitudes().dot(apply_local(o.op.matrix(), o.factor, o.layout, v.amplitudes())).real();
}

inline double hermiticity_defect(const LocalObservable &o) { return hermiticity_defect(o.op); }

/// Commuting local terms exponentiate factor by factor.
inline ProductOperator propagator(const LocalSum &h, double theta) {
    std::vector<DenseOperator> f;
    for (const auto &t : h.terms()) {
        f.push_back(hermitian_exponential(t, theta));
    }
    return ProductOperator(std::move(f));
}

/// ‖(⊗ᵢ Sᵢ)†(⊗ᵢ Sᵢ) − I‖_F, expanded over nonempty subsets of factors with
/// Eᵢ = Sᵢ†Sᵢ − I so that every Gram term is second order in the defects.
inline double unitarity_defect(const ProductOperator &s) {
    const std::size_t k = s.factors().size();
    std::vector<Matrix> eye, err;
    for (const auto &f : s.factors()) {
        const Matrix id = Matrix::Identity(f.dim(), f.dim());
        eye.push_back(id);
        err.push_back(f.matrix().adjoint() * f.matrix() - id);
    }
    std::vector<std::vector<Matrix>> terms;
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::vector<Matrix> t;
        for (std::size_t i = 0; i < k; ++i) {
            t.push_back((mask >> i) & 1U ? err[i] : eye[i]);
        }
        terms.push_back(std::move(t));
    }
    return kron_sum_norm(terms);
}

/// ‖S·H·S† − H′‖_F for a product S and local sums H, H′. Uses Sⱼ·Sⱼ† = I on
/// the spectator factors, so it is only meaningful for unitary S (checked
/// separately by unitarity_defect).
inline double conjugation_residual(const ProductOperator &s, const LocalSum &h,
                                   const LocalSum &h_prime) {
    if (!(s.layout() == h.layout()) || !(h.layout() == h_prime.layout())) {
        throw DimensionError("conjugation_residual: layout mismatch");
    }
    std::vector<std::vector<Matrix>> terms;
    for (std::size_t i = 0; i < h.terms().size(); ++i) {
        const Matrix &si = s.factor(i).matrix();
        const Matrix d = si * h.term(i).matrix() * si.adjoint() - h_prime.term(i).matrix();
        terms.push_back(h.embedded_factors(i, d));
    }
    return kron_sum_norm(terms);
}

/// ‖[S, H]‖_F; equal to the conjugation residual when S is unitary.
inline double commutator_norm(const ProductOperator &s, const LocalSum &h) {
    return conjugation_residual(s, h, h);
}

/// ‖XY − YX‖_F for two product operators on the same layout.
inline double commutator_norm(const ProductOperator &x, const ProductOperator &y) {
    std::vector<Matrix> xy, yx;
    for (std::size_t i = 0; i < x.factors().size(); ++i) {
        xy.push_back(x.factor(i).matrix() * y.factor(i).matrix());
        yx.push_back(y.factor(i).matrix() * x.factor(i).matrix());
    }
    yx.front() = -yx.front();
    return kron_sum_norm({xy, yx});
}

} // namespace qmsym
