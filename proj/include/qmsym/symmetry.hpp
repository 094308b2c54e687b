#pragma once

/**
 * @file
 * Outcome-swapping unitaries that commute with the measurement Hamiltonian.
 *
 * parity_swap sends |λ,a⟩|ζ⟩ to |−λ,a⟩|−ζ⟩. parity_swap_momentum builds the
 * same operator as the permutation |λ,a⟩|p⟩ ↦ |−λ,a⟩|−p⟩ in the momentum
 * basis, conjugated back through the grid DFT. scaling_swap acts on a
 * geometric diagonal model, sending (λ, p) to (rλ, p/r).
 */

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmsym/diagonal.hpp"
#include "qmsym/linalg.hpp"
#include "qmsym/measurement.hpp"

namespace qmsym {

struct SwapTolerances {
    double commutator = 1e-10;   // relative to ‖H‖_F
    double unitarity = 1e-10;
    double swap = 1e-10;
    double cross_construction = 1e-10;
    double intertwining = 1e-10;

    static SwapTolerances uniform(double tol) { return {tol, tol, tol, tol, tol}; }
};

enum class SwapConstruction { position_basis, momentum_basis, scaling };

inline const char *to_string(SwapConstruction c) {
    switch (c) {
    case SwapConstruction::position_basis: return "position-basis";
    case SwapConstruction::momentum_basis: return "momentum-basis";
    case SwapConstruction::scaling: return "scaling";
    }
    return "position-basis";
}

struct SwapCertificate {
    SwapConstruction construction = SwapConstruction::position_basis;
    /// ‖[S, H]‖_F / ‖H‖_F (absolute when H = 0).
    double commutator_residual = 0.0;
    double unitarity_defect = 0.0;
    double swap_residual = 0.0;
    std::optional<double> cross_construction_distance;
    /// max over sampled t of ‖U_t S − S U_t‖_F.
    std::optional<double> intertwining_residual;
    /// Basis kets whose H eigenvalue sector changes under S, counted in
    /// integer index arithmetic.
    std::optional<long> exact_index_violations;
    /// |λ₂/λ₁|: the amplitude factor carried by the continuum (δ-normalized)
    /// form of the scaling map; the discrete unitary carries 1.
    std::optional<double> continuum_amplitude_factor;
    std::string note;
    bool pass = false;
};

// ---------------------------------------------------------------------------
// parity swap

inline void require_symmetric_spectrum(const MeasurementSetup &setup) {
    if (!setup.observable().has_symmetric_spectrum()) {
        throw PreconditionError(
            "outcome swap needs a symmetric spectrum: every eigenvalue λ must come "
            "with −λ, both carrying the same degeneracy");
    }
}

/// Index image of (λᵢ, a, n) ↦ (−λᵢ, a, −n). The same map read in the
/// momentum basis is (λᵢ, a, j) ↦ (−λᵢ, a, −j).
inline std::vector<Index> parity_permutation(const MeasurementSetup &setup) {
    require_symmetric_spectrum(setup);
    const auto &obs = setup.observable();
    const int m = setup.grid().half_width();
    std::vector<Index> image(static_cast<std::size_t>(setup.dim()));
    for (std::size_t i = 0; i < obs.count(); ++i) {
        const std::size_t neg = *obs.negation_index(i);
        for (int a = 0; a < obs.degeneracy(); ++a) {
            for (int n = -m; n <= m; ++n) {
                image[static_cast<std::size_t>(setup.basis_index(i, a, n))] =
                    setup.basis_index(neg, a, -n);
            }
        }
    }
    return image;
}

inline DenseOperator parity_swap(const MeasurementSetup &setup) {
    return DenseOperator::permutation(parity_permutation(setup));
}

inline DenseOperator parity_swap_momentum(const MeasurementSetup &setup) {
    const DenseOperator in_momentum = DenseOperator::permutation(parity_permutation(setup));
    const Matrix f = kronecker(Matrix::Identity(setup.system_dim(), setup.system_dim()),
                               setup.grid().fourier());
    return DenseOperator(f.adjoint() * in_momentum.matrix() * f, OperatorKind::unitary,
                         1e-10);
}

inline std::vector<double> default_sample_times(double duration) {
    return {0.0, 0.25 * duration, 0.5 * duration, 0.75 * duration, duration};
}

inline double relative_commutator(const DenseOperator &h, const DenseOperator &s) {
    const double comm = commutator_norm(h, s);
    const double scale = h.matrix().norm();
    return scale > 0.0 ? comm / scale : comm;
}

/// Certifies a candidate S against the measurement Hamiltonian. Useful for
/// mutation tests; certify_lemma1(setup) supplies the canonical S.
inline SwapCertificate certify_lemma1(const MeasurementSetup &setup, const DenseOperator &s,
                                      const SwapTolerances &tol = {}) {
    require_symmetric_spectrum(setup);
    if (s.dim() != setup.dim()) {
        throw DimensionError("certify_lemma1: candidate S has wrong dimension");
    }
    const DenseOperator h = interaction_hamiltonian(setup);
    const HermitianEigensystem eig = hermitian_eigensystem(h);
    const double hbar = setup.hbar();
    const double duration = setup.duration();

    SwapCertificate cert;
    cert.construction = SwapConstruction::position_basis;
    cert.commutator_residual = relative_commutator(h, s);
    cert.unitarity_defect = unitarity_defect(s);

    const DenseOperator u_end = hermitian_exponential(eig, duration / hbar);
    const auto &obs = setup.observable();
    double swap = 0.0;
    for (std::size_t i = 0; i < obs.count(); ++i) {
        const std::size_t neg = *obs.negation_index(i);
        for (int a = 0; a < obs.degeneracy(); ++a) {
            const ComplexVector result = u_end.apply(ready_state(setup, i, a));
            const ComplexVector swapped = u_end.apply(ready_state(setup, neg, a));
            swap = std::max(swap, distance(s.apply(result), swapped));
        }
    }
    cert.swap_residual = swap;

    cert.cross_construction_distance = frobenius_distance(s, parity_swap_momentum(setup));

    double intertwining = 0.0;
    for (double t : default_sample_times(duration)) {
        const Matrix u = hermitian_exponential(eig, t / hbar).matrix();
        intertwining = std::max(intertwining, (u * s.matrix() - s.matrix() * u).norm());
    }
    cert.intertwining_residual = intertwining;

    cert.pass = cert.commutator_residual <= tol.commutator &&
                cert.unitarity_defect <= tol.unitarity && cert.swap_residual <= tol.swap &&
                *cert.cross_construction_distance <= tol.cross_construction &&
                *cert.intertwining_residual <= tol.intertwining;
    return cert;
}

inline SwapCertificate certify_lemma1(const MeasurementSetup &setup,
                                      const SwapTolerances &tol = {}) {
    return certify_lemma1(setup, parity_swap(setup), tol);
}

// ---------------------------------------------------------------------------
// geometric diagonal model

/// Finite eigenbasis model with A-eigenvalues λ = ±λ₁·r^m and pointer
/// momenta p = ±p₀·r^k, H = −g·λ·p diagonal.
///
/// Basis kets are labelled (sλ, m, a, sp, n) with m, n ∈ {−R,…,R} and
/// k = n − m, so each ket has −gλp = −g·sλ·sp·λ₁p₀·rⁿ. The shift m → m+1
/// (cyclic in m, hence k → k−1 away from the wrap) keeps n and therefore
/// keeps every H eigenvalue; the wrap stays on the same energy shell.
class GeometricDiagonalModel {
  public:
    struct Label {
        int lambda_sign = +1;  // ±1
        int m = 0;             // A exponent
        int label = 0;         // degeneracy label a
        int p_sign = +1;       // ±1
        int n = 0;             // energy exponent, k = n − m

        friend bool operator==(const Label &, const Label &) = default;
    };

    GeometricDiagonalModel(double ratio, int exponent_range, int degeneracy = 1,
                           double lambda_unit = 1.0, double coupling = 1.0,
                           double momentum_unit = 1.0)
        : ratio_(ratio), range_(exponent_range), degeneracy_(degeneracy),
          lambda_unit_(lambda_unit), coupling_(coupling), momentum_unit_(momentum_unit) {
        if (!(ratio > 0.0) || !std::isfinite(ratio)) {
            throw PreconditionError("scaling ratio r must be positive");
        }
        if (lambda_unit == 0.0 || !std::isfinite(lambda_unit)) {
            throw PreconditionError("scaling needs non-null eigenvalues (λ₁ = 0)");
        }
        if (!(momentum_unit > 0.0)) {
            throw PreconditionError("momentum unit must be positive");
        }
        if (exponent_range < 1) {
            throw PreconditionError("exponent range must be ≥ 1");
        }
        if (degeneracy < 1) {
            throw PreconditionError("degeneracy must be ≥ 1");
        }
        if (!(coupling >= 0.0)) {
            throw PreconditionError("coupling g must be nonnegative");
        }
    }

    [[nodiscard]] double ratio() const { return ratio_; }
    [[nodiscard]] int exponent_range() const { return range_; }
    [[nodiscard]] int degeneracy() const { return degeneracy_; }
    [[nodiscard]] double lambda_unit() const { return lambda_unit_; }
    [[nodiscard]] double coupling() const { return coupling_; }
    [[nodiscard]] int levels() const { return 2 * range_ + 1; }
    [[nodiscard]] Index dim() const {
        return Index{4} * degeneracy_ * levels() * levels();
    }

    [[nodiscard]] Index index_of(const Label &l) const {
        const Index sl = l.lambda_sign > 0 ? 0 : 1;
        const Index sp = l.p_sign > 0 ? 0 : 1;
        const Index mi = l.m + range_;
        const Index ni = l.n + range_;
        return (((sl * levels() + mi) * degeneracy_ + l.label) * 2 + sp) * levels() + ni;
    }

    [[nodiscard]] Label label_of(Index idx) const {
        Label l;
        const Index ni = idx % levels();
        idx /= levels();
        const Index sp = idx % 2;
        idx /= 2;
        l.label = static_cast<int>(idx % degeneracy_);
        idx /= degeneracy_;
        const Index mi = idx % levels();
        idx /= levels();
        l.lambda_sign = idx == 0 ? +1 : -1;
        l.p_sign = sp == 0 ? +1 : -1;
        l.m = static_cast<int>(mi) - range_;
        l.n = static_cast<int>(ni) - range_;
        return l;
    }

    [[nodiscard]] double eigenvalue(const Label &l) const {
        return l.lambda_sign * lambda_unit_ * std::pow(ratio_, l.m);
    }

    [[nodiscard]] double momentum(const Label &l) const {
        return l.p_sign * momentum_unit_ * std::pow(ratio_, l.n - l.m);
    }

    /// −g·λ·p evaluated on the shell (sλ·sp, n) so that kets on one shell
    /// carry bitwise-identical energies.
    [[nodiscard]] double energy(const Label &l) const {
        return -coupling_ * (l.lambda_sign * l.p_sign) * lambda_unit_ * momentum_unit_ *
               std::pow(ratio_, l.n);
    }

    /// Integer key identifying the energy shell of a ket: (sλ·sp, n).
    [[nodiscard]] std::array<int, 2> energy_shell(const Label &l) const {
        return {l.lambda_sign * l.p_sign, l.n};
    }

    [[nodiscard]] std::vector<double> energies() const {
        std::vector<double> e(static_cast<std::size_t>(dim()));
        for (Index k = 0; k < dim(); ++k) {
            e[static_cast<std::size_t>(k)] = energy(label_of(k));
        }
        return e;
    }

    [[nodiscard]] DenseOperator hamiltonian() const { return DenseOperator::diagonal(energies()); }

    /// H in O(dim) storage.
    [[nodiscard]] DiagonalOperator diagonal_hamiltonian() const {
        return DiagonalOperator::real(energies());
    }

    [[nodiscard]] DiagonalOperator diagonal_observable() const {
        std::vector<double> a(static_cast<std::size_t>(dim()));
        for (Index k = 0; k < dim(); ++k) {
            a[static_cast<std::size_t>(k)] = eigenvalue(label_of(k));
        }
        return DiagonalOperator::real(a);
    }

    /// A ⊗ I in the model basis.
    [[nodiscard]] DenseOperator observable() const {
        std::vector<double> a(static_cast<std::size_t>(dim()));
        for (Index k = 0; k < dim(); ++k) {
            a[static_cast<std::size_t>(k)] = eigenvalue(label_of(k));
        }
        return DenseOperator::diagonal(a);
    }

    /// Exponent m with λ = sign·λ₁·r^m, if λ is in the model.
    [[nodiscard]] std::optional<Label> find_eigenvalue(double lambda) const {
        for (int s : {+1, -1}) {
            for (int m = -range_; m <= range_; ++m) {
                Label l{s, m, 0, +1, 0};
                if (std::abs(eigenvalue(l) - lambda) <= 1e-12 * std::abs(lambda)) {
                    return l;
                }
            }
        }
        return std::nullopt;
    }

    /// |λ, a⟩|ready⟩: uniform superposition over the momentum kets of the
    /// (sλ, m, a) sector, the momentum-basis image of a pointer at ζ = 0.
    [[nodiscard]] ComplexVector ready_state(int lambda_sign, int m, int label) const {
        Vector v = Vector::Zero(dim());
        const double amp = 1.0 / std::sqrt(2.0 * levels());
        for (int sp : {+1, -1}) {
            for (int n = -range_; n <= range_; ++n) {
                v(index_of({lambda_sign, m, label, sp, n})) = amp;
            }
        }
        return ComplexVector(std::move(v));
    }

  private:
    double ratio_;
    int range_;
    int degeneracy_;
    double lambda_unit_;
    double coupling_;
    double momentum_unit_;
};

/// Index image of (sλ, m, a, sp, n) ↦ (σ·sλ, m+1 mod, a, σ·sp, n), i.e.
/// (λ, p) ↦ (σrλ, σp/r). For r = 1 the map is the identity.
inline std::vector<Index> scaling_permutation(const GeometricDiagonalModel &model, int sign = +1) {
    if (sign != 1 && sign != -1) {
        throw PreconditionError("scaling_permutation: sign must be ±1");
    }
    std::vector<Index> image(static_cast<std::size_t>(model.dim()));
    const int r = model.exponent_range();
    for (Index k = 0; k < model.dim(); ++k) {
        auto l = model.label_of(k);
        if (model.ratio() != 1.0) {
            l.m = l.m == r ? -r : l.m + 1;
        }
        l.lambda_sign *= sign;
        l.p_sign *= sign;
        image[static_cast<std::size_t>(k)] = model.index_of(l);
    }
    return image;
}

inline DenseOperator scaling_swap(const GeometricDiagonalModel &model, int sign = +1) {
    return DenseOperator::permutation(scaling_permutation(model, sign));
}

/// Certifies that the scaling map sends the λ₁ outcome to the λ₂ outcome
/// while commuting with H. λ₂/λ₁ must be ±r; a negative ratio also flips the
/// sign sectors.
inline SwapCertificate certify_lemma2(const GeometricDiagonalModel &model, double lambda1,
                                      double lambda2, const SwapTolerances &tol = {},
                                      double duration = 1.0, double hbar = 1.0,
                                      std::vector<double> sample_times = {}) {
    if (lambda1 == 0.0 || lambda2 == 0.0) {
        throw PreconditionError("scaling swap needs non-null eigenvalues λ₁, λ₂");
    }
    const auto start = model.find_eigenvalue(lambda1);
    if (!start) {
        throw ModelMismatchError("λ₁ is not an eigenvalue of the model");
    }
    if (sample_times.empty()) {
        sample_times = default_sample_times(duration);
    }

    SwapCertificate cert;
    cert.construction = SwapConstruction::scaling;
    cert.continuum_amplitude_factor = std::abs(lambda2 / lambda1);

    const DiagonalOperator h = model.diagonal_hamiltonian();
    if (lambda1 == lambda2) {
        cert.commutator_residual = 0.0;
        cert.unitarity_defect = 0.0;
        cert.swap_residual = 0.0;
        cert.exact_index_violations = 0;
        cert.note = "degenerate pair λ₁ = λ₂: identity automorphism";
        cert.pass = true;
        return cert;
    }

    const double rho = lambda2 / lambda1;
    if (std::abs(std::abs(rho) - model.ratio()) > 1e-12 * model.ratio()) {
        std::ostringstream os;
        os << "λ₂/λ₁ = " << rho << " does not match the model ratio ±" << model.ratio();
        throw ModelMismatchError(os.str());
    }
    if (model.ratio() != 1.0 && start->m == model.exponent_range()) {
        throw ModelMismatchError("λ₂ lies outside the model's exponent range");
    }
    const int sign = rho > 0.0 ? +1 : -1;
    const auto image = scaling_permutation(model, sign);
    const PermutationOperator s(image);

    auto target = *start;
    target.lambda_sign *= sign;
    if (model.ratio() != 1.0) {
        target.m += 1;
    }

    // Integer-level checks: energy shells preserved everywhere, and the λ₁
    // sector lands in the λ₂ sector for every label.
    long violations = 0;
    for (Index k = 0; k < model.dim(); ++k) {
        const auto from = model.label_of(k);
        const auto to = model.label_of(image[static_cast<std::size_t>(k)]);
        if (model.energy_shell(from) != model.energy_shell(to)) {
            ++violations;
        }
        if (from.lambda_sign == start->lambda_sign && from.m == start->m &&
            (to.lambda_sign != target.lambda_sign || to.m != target.m ||
             to.label != from.label)) {
            ++violations;
        }
    }
    cert.exact_index_violations = violations;

    const double h_norm = h.diagonal().norm();
    const double comm = commutator_norm(h, s);
    cert.commutator_residual = h_norm > 0.0 ? comm / h_norm : comm;
    cert.unitarity_defect = unitarity_defect(s);

    double swap = 0.0;
    for (int a = 0; a < model.degeneracy(); ++a) {
        const ComplexVector from = model.ready_state(start->lambda_sign, start->m, a);
        const ComplexVector to = model.ready_state(target.lambda_sign, target.m, a);
        swap = std::max(swap, distance(s.apply(from), to));
        for (double t : sample_times) {
            const DiagonalOperator u = propagator(h, t / hbar);
            swap = std::max(swap, distance(s.apply(u.apply(from)), u.apply(to)));
        }
    }
    cert.swap_residual = swap;

    double intertwining = 0.0;
    for (double t : sample_times) {
        intertwining = std::max(intertwining, commutator_norm(propagator(h, t / hbar), s));
    }
    cert.intertwining_residual = intertwining;
    cert.note = "discrete orthonormal basis: amplitude factor 1 replaces the continuum |λ₂/λ₁|";

    cert.pass = violations == 0 && cert.commutator_residual <= tol.commutator &&
                cert.unitarity_defect <= tol.unitarity && cert.swap_residual <= tol.swap &&
                intertwining <= tol.intertwining;
    return cert;
}

} // namespace qmsym
