#pragma once

/**
 * @file
 * Basic quantum structures (Hilbert space, Hamiltonian, ψ(t)) and the
 * numerical certification of isomorphisms between them.
 *
 * Two structures are isomorphic under a unitary S when S|ψ(t)⟩ = |φ(t)⟩ at
 * every sampled t and S·H·S⁻¹ = H′. Whether isomorphic structures describe
 * the same physical world is decided against a fixed frame of reference
 * observables (distinctness_witness).
 *
 * The templates accept any Hamiltonian/unitary pair that provides the free
 * functions apply, propagator, unitarity_defect and conjugation_residual:
 * DenseOperator for single setups, LocalSum/ProductOperator for
 * tensor-product worlds too large to assemble.
 */

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qmsym/linalg.hpp"
#include "qmsym/tensor.hpp"

namespace qmsym {

template <class Hamiltonian>
struct BasicQuantumStructure {
    Hamiltonian hamiltonian;
    ComplexVector initial_state;
    std::vector<double> sample_times;
    double hbar = 1.0;

    [[nodiscard]] Index dim() const { return initial_state.dim(); }

    /// ψ(t) = e^{−iHt/ħ}ψ(0).
    [[nodiscard]] ComplexVector state_at(double t) const {
        return apply(propagator(hamiltonian, t / hbar), initial_state);
    }
};

using BQSTriple = BasicQuantumStructure<DenseOperator>;

/// Validated construction: unit-norm state, sample times nonempty, sorted and
/// inside [0, horizon].
template <class Hamiltonian>
BasicQuantumStructure<Hamiltonian> make_bqs(Hamiltonian h, ComplexVector initial,
                                            std::vector<double> sample_times, double horizon,
                                            double hbar = 1.0) {
    if (h.dim() != initial.dim()) {
        throw DimensionError("make_bqs: Hamiltonian and state dimensions differ");
    }
    require_unit_norm(initial, kNormTol, "initial state");
    if (sample_times.empty()) {
        throw PreconditionError("make_bqs: sample_times must be nonempty");
    }
    if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
        throw PreconditionError("make_bqs: sample_times must be sorted");
    }
    if (sample_times.front() < 0.0 || sample_times.back() > horizon) {
        throw PreconditionError("make_bqs: sample_times must lie in [0, T]");
    }
    if (!(hbar > 0.0)) {
        throw PreconditionError("make_bqs: ħ must be positive");
    }
    return {std::move(h), std::move(initial), std::move(sample_times), hbar};
}

struct IsomorphismOptions {
    double tol = 1e-10;
    /// Compare states modulo a global phase: min_φ ‖e^{iφ}Sψ − φ′‖.
    bool phase_insensitive = false;
};

struct IsomorphismReport {
    std::vector<double> sample_times;
    /// ‖Sψ(t) − φ(t)‖ per sample time.
    std::vector<double> state_residuals;
    /// ‖SHS⁻¹ − H′‖_F.
    double hamiltonian_residual = 0.0;
    double unitarity_defect = 0.0;
    bool phase_insensitive = false;
    bool pass = false;

    [[nodiscard]] double max_state_residual() const {
        double m = 0.0;
        for (double r : state_residuals) {
            m = std::max(m, r);
        }
        return m;
    }
};

inline double state_residual(const ComplexVector &a, const ComplexVector &b,
                             bool phase_insensitive) {
    if (!phase_insensitive) {
        return distance(a, b);
    }
    const double sq = a.amplitudes().squaredNorm() + b.amplitudes().squaredNorm() -
                      2.0 * std::abs(overlap(a, b));
    return std::sqrt(std::max(0.0, sq));
}

template <class Unitary>
void require_unitary(const Unitary &s, double tol) {
    const double defect = unitarity_defect(s);
    const double bound = tol * std::sqrt(static_cast<double>(s.dim()));
    if (!(defect <= bound)) {
        std::ostringstream os;
        os << "candidate isomorphism is not unitary: ‖S†S − I‖_F = " << defect
           << " exceeds " << bound;
        throw PreconditionError(os.str());
    }
}

template <class Unitary, class Hamiltonian>
IsomorphismReport check_isomorphism(const Unitary &s, const BasicQuantumStructure<Hamiltonian> &a,
                                    const BasicQuantumStructure<Hamiltonian> &b,
                                    const IsomorphismOptions &opts = {}) {
    if (a.dim() != b.dim() || s.dim() != a.dim()) {
        throw DimensionError("check_isomorphism: dimensions differ");
    }
    if (a.sample_times != b.sample_times) {
        throw PreconditionError("check_isomorphism: structures use different sample times");
    }
    IsomorphismReport report;
    report.unitarity_defect = unitarity_defect(s);
    require_unitary(s, opts.tol);
    report.phase_insensitive = opts.phase_insensitive;
    report.sample_times = a.sample_times;
    for (double t : a.sample_times) {
        const ComplexVector mapped = apply(s, a.state_at(t));
        report.state_residuals.push_back(
            state_residual(mapped, b.state_at(t), opts.phase_insensitive));
    }
    report.hamiltonian_residual = conjugation_residual(s, a.hamiltonian, b.hamiltonian);
    report.pass = report.max_state_residual() <= opts.tol &&
                  report.hamiltonian_residual <= opts.tol;
    return report;
}

/// Throws unless max |⟨α_j|α_k⟩ − δ_jk| ≤ tol.
inline void require_orthonormal(const std::vector<ComplexVector> &basis, double tol) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t k = j; k < basis.size(); ++k) {
            const Complex g = overlap(basis[j], basis[k]);
            const double expect = j == k ? 1.0 : 0.0;
            if (std::abs(g - expect) > tol) {
                std::ostringstream os;
                os << "basis is not orthonormal: |⟨α_" << j << "|α_" << k << "⟩ − δ| = "
                   << std::abs(g - expect);
                throw PreconditionError(os.str());
            }
        }
    }
}

/// With β_j = S·α_j, checks ⟨α_j|ψ(t)⟩ = ⟨β_j|φ(t)⟩ at every t and
/// ⟨α_j|H|α_k⟩ = ⟨β_j|H′|β_k⟩ for every pair, each within tol.
template <class Unitary, class Hamiltonian>
bool basis_transport_check(const Unitary &s, const std::vector<ComplexVector> &basis,
                           const BasicQuantumStructure<Hamiltonian> &a,
                           const BasicQuantumStructure<Hamiltonian> &b,
                           const std::vector<double> &times, double tol) {
    require_orthonormal(basis, 1e-10);
    std::vector<ComplexVector> image;
    image.reserve(basis.size());
    for (const auto &alpha : basis) {
        image.push_back(apply(s, alpha));
    }
    bool ok = true;
    for (double t : times) {
        const ComplexVector psi = a.state_at(t);
        const ComplexVector phi = b.state_at(t);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            ok = ok && std::abs(overlap(basis[j], psi) - overlap(image[j], phi)) <= tol;
        }
    }
    std::vector<ComplexVector> h_alpha, h_beta;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        h_alpha.push_back(apply(a.hamiltonian, basis[k]));
        h_beta.push_back(apply(b.hamiltonian, image[k]));
    }
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            ok = ok && std::abs(overlap(basis[j], h_alpha[k]) - overlap(image[j], h_beta[k])) <= tol;
        }
    }
    return ok;
}

template <class Observable>
struct NamedObservable {
    std::string name;
    Observable op;
};

struct DistinctnessEntry {
    std::string observable;
    double first = 0.0;
    double second = 0.0;
    double gap = 0.0;
};

struct DistinctnessWitness {
    std::vector<DistinctnessEntry> entries;
    bool distinct = false;

    [[nodiscard]] const DistinctnessEntry *find(const std::string &name) const {
        for (const auto &e : entries) {
            if (e.observable == name) {
                return &e;
            }
        }
        return nullptr;
    }
};

/// Compares expectation values of fixed reference observables; the pair is
/// distinct when any gap exceeds tol.
template <class Observable>
DistinctnessWitness distinctness_witness(const ComplexVector &psi, const ComplexVector &phi,
                                         const std::vector<NamedObservable<Observable>> &observables,
                                         double tol) {
    if (psi.dim() != phi.dim()) {
        throw DimensionError("distinctness_witness: state dimensions differ");
    }
    DistinctnessWitness w;
    for (const auto &o : observables) {
        if (!(hermiticity_defect(o.op) <= kHermitianTol)) {
            throw KindError("distinctness_witness: observable '" + o.name + "' is not hermitian");
        }
        DistinctnessEntry e;
        e.observable = o.name;
        e.first = expectation(o.op, psi);
        e.second = expectation(o.op, phi);
        e.gap = std::abs(e.first - e.second);
        w.distinct = w.distinct || e.gap > tol;
        w.entries.push_back(std::move(e));
    }
    return w;
}

} // namespace qmsym
