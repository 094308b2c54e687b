#include <gtest/gtest.h>

#include "qmsym/bqs.hpp"
#include "qmsym/measurement.hpp"
#include "qmsym/random.hpp"
#include "qmsym/symmetry.hpp"

using namespace qmsym;

namespace {

struct World {
    MeasurementSetup setup;
    DenseOperator h;
    DenseOperator s;
    BQSTriple prince;
    BQSTriple pauper;
};

World make_world(int m = 8, double delta = 0.25, double g = 1.0) {
    const MeasurementSetup setup(ObservableSpec::qubit(), make_pointer_grid(m, delta), g, 1.0);
    const auto h = interaction_hamiltonian(setup);
    const auto times = default_sample_times(1.0);
    return {setup, h, parity_swap(setup), make_bqs(h, ready_state(setup, 0u), times, 1.0),
            make_bqs(h, ready_state(setup, 1u), times, 1.0)};
}

std::vector<ComplexVector> standard_basis(Index dim) {
    std::vector<ComplexVector> b;
    for (Index k = 0; k < dim; ++k) b.push_back(ComplexVector::basis(dim, k));
    return b;
}

DenseOperator pointer_z(const MeasurementSetup &setup) {
    return tensor_product(DenseOperator::identity(2), setup.grid().position_operator());
}

} // namespace

TEST(MakeBqs, RejectsInvalidTriples) {
    const auto h = DenseOperator::zero(4);
    const auto psi = ComplexVector::basis(4, 0);
    EXPECT_THROW(make_bqs(h, ComplexVector::basis(3, 0), {0.0}, 1.0), DimensionError);
    EXPECT_THROW(make_bqs(h, ComplexVector(2.0 * psi.amplitudes()), {0.0}, 1.0), PreconditionError);
    EXPECT_THROW(make_bqs(h, psi, {}, 1.0), PreconditionError);
    EXPECT_THROW(make_bqs(h, psi, {0.5, 0.2}, 1.0), PreconditionError);
    EXPECT_THROW(make_bqs(h, psi, {0.0, 1.5}, 1.0), PreconditionError);
    EXPECT_THROW(make_bqs(h, psi, {-0.1, 0.5}, 1.0), PreconditionError);
    EXPECT_NO_THROW(make_bqs(h, psi, {0.0, 1.0}, 1.0));
}

TEST(MakeBqs, StateAtFollowsSchrodingerEvolution) {
    const auto w = make_world();
    for (double t : {0.0, 0.5, 1.0}) {
        EXPECT_LE(distance(w.prince.state_at(t), evolve(w.setup, ready_state(w.setup, 0u), t)), 1e-12);
    }
}

TEST(CheckIsomorphism, IdentityAutomorphism) {
    const auto w = make_world();
    const auto r = check_isomorphism(DenseOperator::identity(w.setup.dim()), w.prince, w.prince);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.max_state_residual(), 0.0);
    EXPECT_EQ(r.hamiltonian_residual, 0.0);
    EXPECT_EQ(r.unitarity_defect, 0.0);
}

TEST(CheckIsomorphism, ParitySwapRelatesPrinceAndPauper) {
    const auto w = make_world();
    const auto r = check_isomorphism(w.s, w.prince, w.pauper);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.state_residuals.size(), 5u);
    EXPECT_LE(r.max_state_residual(), 1e-10);
    EXPECT_LE(r.hamiltonian_residual, 1e-10);
}

TEST(CheckIsomorphism, RandomUnitaryFailsHamiltonianCondition) {
    const auto w = make_world();
    Rng rng(61);
    const auto r = check_isomorphism(random_unitary(w.setup.dim(), rng), w.prince, w.pauper);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.hamiltonian_residual, 0.1);
}

TEST(CheckIsomorphism, RejectsNonUnitaryCandidate) {
    const auto w = make_world();
    const DenseOperator scaled(1.5 * w.s.matrix());
    EXPECT_THROW(check_isomorphism(scaled, w.prince, w.pauper), PreconditionError);
    EXPECT_THROW(check_isomorphism(DenseOperator::identity(3), w.prince, w.pauper), DimensionError);
}

TEST(CheckIsomorphism, RejectsMismatchedSampleTimes) {
    auto w = make_world();
    const auto other = make_bqs(w.h, ready_state(w.setup, 1u), {0.0, 1.0}, 1.0);
    EXPECT_THROW(check_isomorphism(w.s, w.prince, other), PreconditionError);
}

TEST(CheckIsomorphism, SymmetricUnderInverse) {
    const auto w = make_world();
    Rng rng(62);
    for (const auto &s : {w.s, random_unitary(w.setup.dim(), rng)}) {
        const auto forward = check_isomorphism(s, w.prince, w.pauper);
        const auto backward = check_isomorphism(s.adjoint(), w.pauper, w.prince);
        EXPECT_EQ(forward.pass, backward.pass);
        EXPECT_NEAR(forward.hamiltonian_residual, backward.hamiltonian_residual,
                    1e-12 * std::max(1.0, forward.hamiltonian_residual));
        for (std::size_t k = 0; k < forward.state_residuals.size(); ++k)
            EXPECT_NEAR(forward.state_residuals[k], backward.state_residuals[k], 1e-12);
    }
}

TEST(CheckIsomorphism, GlobalPhaseOption) {
    const auto w = make_world();
    const DenseOperator phased(std::polar(1.0, 0.7) * w.s.matrix(), OperatorKind::unitary);
    const auto literal = check_isomorphism(phased, w.prince, w.pauper);
    EXPECT_FALSE(literal.pass);
    EXPECT_LE(literal.hamiltonian_residual, 1e-10);
    const auto quotient = check_isomorphism(phased, w.prince, w.pauper, {1e-10, true});
    EXPECT_TRUE(quotient.pass);
    EXPECT_TRUE(quotient.phase_insensitive);
}

TEST(BasisTransport, IdentityOnStandardBasis) {
    const auto w = make_world(3, 0.5);
    EXPECT_TRUE(basis_transport_check(DenseOperator::identity(w.setup.dim()), standard_basis(w.setup.dim()),
                                      w.prince, w.prince, w.prince.sample_times, 1e-12));
}

TEST(BasisTransport, ParitySwapOnStandardBasis) {
    const auto w = make_world();
    EXPECT_TRUE(basis_transport_check(w.s, standard_basis(w.setup.dim()), w.prince, w.pauper,
                                      w.prince.sample_times, 1e-10));
}

TEST(BasisTransport, RejectsNonOrthonormalBasis) {
    const auto w = make_world(3, 0.5);
    auto basis = standard_basis(w.setup.dim());
    basis[2] = ComplexVector(1.01 * basis[2].amplitudes());
    EXPECT_THROW(basis_transport_check(w.s, basis, w.prince, w.pauper, w.prince.sample_times, 1e-10),
                 PreconditionError);
}

TEST(BasisTransport, FollowsFromIsomorphismOnRandomBases) {
    const auto w = make_world();
    const double tol = 1e-10;
    ASSERT_TRUE(check_isomorphism(w.s, w.prince, w.pauper, {tol}).pass);
    Rng rng(63);
    for (int trial = 0; trial < 5; ++trial) {
        const auto basis = random_orthonormal_basis(w.setup.dim(), rng);
        EXPECT_TRUE(basis_transport_check(w.s, basis, w.prince, w.pauper, w.prince.sample_times, 10.0 * tol))
            << "trial " << trial;
    }
}

TEST(BasisTransport, DetectsBrokenIsomorphism) {
    const auto w = make_world(3, 0.5);
    Rng rng(64);
    const auto u = random_unitary(w.setup.dim(), rng);
    EXPECT_FALSE(basis_transport_check(u, standard_basis(w.setup.dim()), w.prince, w.pauper,
                                       w.prince.sample_times, 1e-10));
}

TEST(Distinctness, IdenticalStatesAreNotDistinct) {
    const auto w = make_world();
    const auto psi = w.prince.state_at(1.0);
    const std::vector<NamedObservable<DenseOperator>> frame{{"Z", pointer_z(w.setup)}};
    const auto wit = distinctness_witness(psi, psi, frame, 1e-10);
    EXPECT_FALSE(wit.distinct);
    EXPECT_EQ(wit.entries[0].gap, 0.0);
}

TEST(Distinctness, PrinceAndPauperDifferInPointerPosition) {
    const auto w = make_world();
    const std::vector<NamedObservable<DenseOperator>> frame{
        {"pointer Z", pointer_z(w.setup)}, {"identity", DenseOperator::identity(w.setup.dim())}};
    const auto wit = distinctness_witness(w.prince.state_at(1.0), w.pauper.state_at(1.0), frame, 1e-10);
    EXPECT_TRUE(wit.distinct);
    ASSERT_NE(wit.find("pointer Z"), nullptr);
    EXPECT_NEAR(wit.find("pointer Z")->gap, 2.0, 1e-9);
    EXPECT_NEAR(wit.find("identity")->gap, 0.0, 1e-15);
    EXPECT_EQ(wit.find("missing"), nullptr);
    for (const auto &e : wit.entries) EXPECT_GE(e.gap, 0.0);
}

TEST(Distinctness, RejectsNonHermitianObservable) {
    const auto w = make_world(2, 0.5);
    Matrix m = Matrix::Zero(w.setup.dim(), w.setup.dim());
    m(0, 1) = 1.0;
    const std::vector<NamedObservable<DenseOperator>> frame{{"bad", DenseOperator(m)}};
    const auto psi = ready_state(w.setup, 0u);
    EXPECT_THROW(distinctness_witness(psi, psi, frame, 1e-10), KindError);
    EXPECT_THROW(distinctness_witness(psi, ComplexVector::basis(3, 0), frame, 1e-10), DimensionError);
}

TEST(StructuredBqs, MatchesDenseForTwoFactors) {
    const auto w = make_world(2, 0.5);
    const LocalSum h({w.h, w.h});
    const auto psi = tensor_product(ready_state(w.setup, 0u), ready_state(w.setup, 1u));
    const auto phi = tensor_product(ready_state(w.setup, 1u), ready_state(w.setup, 1u));
    const auto times = w.prince.sample_times;
    const auto a = make_bqs(h, psi, times, 1.0);
    const auto b = make_bqs(h, phi, times, 1.0);
    const ProductOperator s({w.s, DenseOperator::identity(w.setup.dim())});
    const auto structured = check_isomorphism(s, a, b);

    const auto da = make_bqs(h.to_dense(), psi, times, 1.0);
    const auto db = make_bqs(h.to_dense(), phi, times, 1.0);
    const auto dense = check_isomorphism(s.to_dense(), da, db);
    EXPECT_TRUE(structured.pass);
    EXPECT_TRUE(dense.pass);
    EXPECT_NEAR(structured.max_state_residual(), dense.max_state_residual(), 1e-12);
    EXPECT_NEAR(structured.hamiltonian_residual, dense.hamiltonian_residual, 1e-12);
}
