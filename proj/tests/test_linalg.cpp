#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmsym/linalg.hpp"
#include "qmsym/random.hpp"

using namespace qmsym;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix gaussian_integer_matrix(Index rows, Index cols, Rng &rng) {
    std::uniform_int_distribution<int> dist(-9, 9);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

} // namespace

TEST(ComplexVector, RejectsEmptyAmplitudes) {
    EXPECT_THROW(ComplexVector(Vector(0)), DimensionError);
}

TEST(ComplexVector, BasisVectorsAreUnit) {
    const auto e = ComplexVector::basis(4, 2);
    EXPECT_EQ(e.dim(), 4);
    EXPECT_EQ(e[2], Complex(1.0));
    EXPECT_TRUE(e.is_unit());
    EXPECT_THROW(ComplexVector::basis(4, 4), DimensionError);
}

TEST(ComplexVector, UnitNormGuard) {
    Vector v(2);
    v << 1.0, 1.0;
    const ComplexVector x(v);
    EXPECT_THROW(require_unit_norm(x), PreconditionError);
    EXPECT_NO_THROW(require_unit_norm(x.normalized()));
    Vector w(1);
    w << 1.0 + 1e-13;
    EXPECT_NO_THROW(require_unit_norm(ComplexVector(w)));
}

TEST(DenseOperator, KindTagsAreVerified) {
    Matrix upper(2, 2);
    upper << 1, 1, 0, 1;
    EXPECT_THROW(DenseOperator(upper, OperatorKind::hermitian), KindError);
    EXPECT_THROW(DenseOperator(upper, OperatorKind::unitary), KindError);
    EXPECT_NO_THROW(DenseOperator(upper, OperatorKind::general));
    EXPECT_NO_THROW(DenseOperator(pauli_x(), OperatorKind::hermitian));
    EXPECT_NO_THROW(DenseOperator(pauli_x(), OperatorKind::unitary));
    EXPECT_THROW(DenseOperator(Matrix::Zero(2, 3)), DimensionError);
}

TEST(DenseOperator, PermutationMustBeBijection) {
    EXPECT_THROW(DenseOperator::permutation({0, 0, 1}), PreconditionError);
    EXPECT_THROW(DenseOperator::permutation({0, 3, 1}), PreconditionError);
    const auto p = DenseOperator::permutation({2, 0, 1});
    EXPECT_EQ(p.apply(ComplexVector::basis(3, 0)), ComplexVector::basis(3, 2));
    EXPECT_EQ(unitarity_defect(p), 0.0);
}

TEST(TensorProduct, IdentityFactors) {
    const auto i6 = tensor_product(DenseOperator::identity(2), DenseOperator::identity(3));
    EXPECT_EQ(i6.matrix(), Matrix::Identity(6, 6));
    EXPECT_EQ(i6.kind(), OperatorKind::unitary);
}

TEST(TensorProduct, DiagonalFactors) {
    const auto d = tensor_product(DenseOperator::diagonal({1, -1}), DenseOperator::diagonal({2, 3}));
    EXPECT_EQ(d.matrix(), DenseOperator::diagonal({2, 3, -2, -3}).matrix());
    EXPECT_EQ(d.kind(), OperatorKind::hermitian);
}

TEST(TensorProduct, MatchesQuadrupleLoopOracle) {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = gaussian_matrix(2, 2, rng);
        const Matrix b = gaussian_matrix(3, 3, rng);
        const Matrix got = tensor_product(DenseOperator(a), DenseOperator(b)).matrix();
        const Matrix want = oracle::kron(a, b);
        EXPECT_LE((got - want).norm(), 1e-15 * want.norm());
        EXPECT_EQ(got, want);
    }
}

TEST(TensorProduct, VectorsMatchOracle) {
    Rng rng(8);
    const auto a = random_state(3, rng);
    const auto b = random_state(5, rng);
    EXPECT_EQ(tensor_product(a, b).amplitudes(), oracle::kron(a.amplitudes(), b.amplitudes()));
}

TEST(TensorProduct, MixedKindsRejected) {
    const LinearObject v = ComplexVector::basis(2, 0);
    const LinearObject m = DenseOperator::identity(2);
    EXPECT_THROW(tensor_product(v, m), KindError);
    EXPECT_NO_THROW(tensor_product(v, v));
    EXPECT_NO_THROW(tensor_product(m, m));
}

TEST(TensorProduct, MixedOperatorKindsBecomeGeneral) {
    const auto x = tensor_product(DenseOperator::diagonal({1, 2}), DenseOperator::identity(2));
    EXPECT_EQ(x.kind(), OperatorKind::general);
}

TEST(TensorProduct, AssociativeOnExactEntries) {
    Rng rng(11);
    const DenseOperator a(gaussian_integer_matrix(2, 2, rng));
    const DenseOperator b(gaussian_integer_matrix(3, 3, rng));
    const DenseOperator c(gaussian_integer_matrix(2, 2, rng));
    EXPECT_EQ(tensor_product(tensor_product(a, b), c).matrix(),
              tensor_product(a, tensor_product(b, c)).matrix());
}

TEST(TensorProduct, AssociativeToRoundoffOnGeneralEntries) {
    Rng rng(12);
    const DenseOperator a(gaussian_matrix(2, 2, rng));
    const DenseOperator b(gaussian_matrix(3, 3, rng));
    const DenseOperator c(gaussian_matrix(2, 2, rng));
    const Matrix left = tensor_product(tensor_product(a, b), c).matrix();
    const Matrix right = tensor_product(a, tensor_product(b, c)).matrix();
    EXPECT_LE((left - right).norm(), 1e-15 * left.norm());
}

TEST(HermitianExponential, ZeroAngleIsIdentity) {
    Rng rng(1);
    const auto h = random_hermitian(6, rng);
    EXPECT_LE((hermitian_exponential(h, 0.0).matrix() - Matrix::Identity(6, 6)).norm(), 1e-14);
}

TEST(HermitianExponential, DiagonalAtPiIsMinusIdentity) {
    const auto u = hermitian_exponential(DenseOperator::diagonal({1, -1}), M_PI);
    EXPECT_LE((u.matrix() + Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(HermitianExponential, MatchesTaylorOracle) {
    Rng rng(0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = random_hermitian(8, rng);
        const Matrix got = hermitian_exponential(h, 0.37).matrix();
        EXPECT_LE((got - oracle::taylor_exp(h.matrix(), 0.37)).norm(), 1e-9) << "trial " << trial;
    }
}

TEST(HermitianExponential, OutputIsUnitary) {
    Rng rng(2);
    for (Index dim : {2, 5, 16, 40}) {
        const auto h = random_hermitian(dim, rng);
        for (double theta : {-3.0, 0.1, 2.5}) {
            const auto u = hermitian_exponential(h, theta);
            EXPECT_EQ(u.kind(), OperatorKind::unitary);
            EXPECT_LE(unitarity_defect(u), 1e-12 * std::sqrt(double(dim)));
        }
    }
}

TEST(HermitianExponential, GroupProperty) {
    Rng rng(3);
    const auto h = random_hermitian(16, rng);
    const auto eig = hermitian_eigensystem(h);
    for (auto [t1, t2] : {std::pair{0.3, 0.9}, {-1.2, 0.5}, {2.0, 2.0}}) {
        const Matrix lhs = hermitian_exponential(eig, t1).matrix() * hermitian_exponential(eig, t2).matrix();
        EXPECT_LE((lhs - hermitian_exponential(eig, t1 + t2).matrix()).norm(), 1e-10);
    }
}

TEST(HermitianExponential, RejectsNonHermitian) {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    EXPECT_THROW(hermitian_exponential(DenseOperator(m), 1.0), KindError);
}

TEST(HermitianExponential, RejectsNonFiniteEntries) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = std::nan("");
    EXPECT_THROW(hermitian_exponential(DenseOperator(m), 1.0), NumericalError);
}

TEST(CommutatorNorm, IdentityCommutesWithEverything) {
    Rng rng(4);
    EXPECT_EQ(commutator_norm(DenseOperator::identity(5), DenseOperator(gaussian_matrix(5, 5, rng))), 0.0);
}

TEST(CommutatorNorm, DiagonalsCommute) {
    EXPECT_EQ(commutator_norm(DenseOperator::diagonal({1, 2}), DenseOperator::diagonal({3, 4})), 0.0);
}

TEST(CommutatorNorm, PauliPair) {
    // [σx, σz] = −2iσy by hand: entries (0, −2; 2, 0), Frobenius norm √8.
    Matrix expected(2, 2);
    expected << 0, -2, 2, 0;
    const DenseOperator x(pauli_x()), z(pauli_z());
    EXPECT_NEAR(commutator_norm(x, z), expected.norm(), 1e-15);
    EXPECT_NEAR(commutator_norm(x, z), 2.0 * std::sqrt(2.0), 1e-15);
}

TEST(CommutatorNorm, DimensionMismatch) {
    EXPECT_THROW(commutator_norm(DenseOperator::identity(2), DenseOperator::identity(3)), DimensionError);
}

TEST(UnitarityDefect, KnownValues) {
    EXPECT_EQ(unitarity_defect(DenseOperator::identity(4)), 0.0);
    for (Index dim : {1, 3, 7}) {
        const DenseOperator two(2.0 * Matrix::Identity(dim, dim));
        EXPECT_NEAR(unitarity_defect(two), 3.0 * std::sqrt(double(dim)), 1e-14);
    }
}

TEST(Overlap, BasisVectors) {
    const auto e0 = ComplexVector::basis(3, 0);
    const auto e1 = ComplexVector::basis(3, 1);
    EXPECT_EQ(overlap(e0, e0), Complex(1.0));
    EXPECT_EQ(overlap(e0, e1), Complex(0.0));
}

TEST(Overlap, ConjugateSymmetry) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_state(9, rng);
        const auto b = random_state(9, rng);
        EXPECT_LE(std::abs(overlap(a, b) - std::conj(overlap(b, a))), 1e-15);
    }
}

TEST(Overlap, SelfOverlapIsSquaredNorm) {
    Rng rng(6);
    const ComplexVector v(gaussian_matrix(6, 1, rng).col(0));
    const Complex s = overlap(v, v);
    EXPECT_EQ(s.imag(), 0.0);
    EXPECT_GE(s.real(), 0.0);
    EXPECT_NEAR(s.real(), v.norm() * v.norm(), 1e-13);
}

TEST(Overlap, ConjugateLinearInFirstArgument) {
    const auto e0 = ComplexVector::basis(2, 0);
    const ComplexVector ie0(Complex(0, 1) * e0.amplitudes());
    EXPECT_EQ(overlap(ie0, e0), Complex(0, -1));
}

TEST(Overlap, DimensionMismatch) {
    EXPECT_THROW(overlap(ComplexVector::basis(2, 0), ComplexVector::basis(3, 0)), DimensionError);
}

TEST(RandomOperators, AreWellFormed) {
    Rng rng(9);
    EXPECT_LE(unitarity_defect(random_unitary(12, rng)), 1e-12);
    EXPECT_EQ(hermiticity_defect(random_hermitian(12, rng)), 0.0);
    const auto basis = random_orthonormal_basis(6, rng);
    ASSERT_EQ(basis.size(), 6u);
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t k = 0; k < basis.size(); ++k)
            EXPECT_NEAR(std::abs(overlap(basis[j], basis[k])), j == k ? 1.0 : 0.0, 1e-12);
}
