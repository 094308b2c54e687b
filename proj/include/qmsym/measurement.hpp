#pragma once

/**
 * @file
 * Standard (von Neumann) measurement model on a discretized pointer.
 *
 * The measured system carries an observable A with eigenkets |λ,a⟩ and the
 * apparatus carries a pointer with position Z and conjugate momentum p_Z on a
 * periodic grid of N = 2M+1 points. The coupling Hamiltonian is
 * H = −g·A⊗p_Z, so that U_t|λ,a⟩|ζ⟩ = |λ,a⟩|ζ − gtλ⟩. Basis kets are ordered
 * (system ⊗ pointer) with the system index i·d + a for eigenvalue i and
 * degeneracy label a.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qmsym/linalg.hpp"

namespace qmsym {

inline constexpr Index kDefaultDimensionCap = 4096;

class PointerGrid {
  public:
    PointerGrid(int half_width, double spacing, double hbar)
        : half_width_(half_width), spacing_(spacing), hbar_(hbar) {
        if (half_width < 1) {
            throw PreconditionError("M must be ≥ 1 (a single-point pointer cannot move)");
        }
        if (!(spacing > 0.0) || !std::isfinite(spacing)) {
            throw PreconditionError("grid spacing Δ must be positive");
        }
        if (!(hbar > 0.0) || !std::isfinite(hbar)) {
            throw PreconditionError("ħ must be positive");
        }
    }

    [[nodiscard]] int half_width() const { return half_width_; }
    [[nodiscard]] Index size() const { return 2 * half_width_ + 1; }
    [[nodiscard]] double spacing() const { return spacing_; }
    [[nodiscard]] double hbar() const { return hbar_; }

    /// Basis index of grid point n ∈ {−M,…,M}.
    [[nodiscard]] Index index_of(int n) const {
        if (n < -half_width_ || n > half_width_) {
            throw DimensionError("PointerGrid::index_of: grid point out of range");
        }
        return n + half_width_;
    }
    [[nodiscard]] int point_of(Index idx) const { return static_cast<int>(idx) - half_width_; }

    [[nodiscard]] double position(int n) const { return n * spacing_; }

    /// p_j = 2πħ·j/(N·Δ).
    [[nodiscard]] double momentum(int j) const {
        return 2.0 * std::numbers::pi * hbar_ * j / (static_cast<double>(size()) * spacing_);
    }

    [[nodiscard]] std::vector<double> positions() const {
        std::vector<double> z;
        for (int n = -half_width_; n <= half_width_; ++n) {
            z.push_back(position(n));
        }
        return z;
    }

    [[nodiscard]] std::vector<double> momenta() const {
        std::vector<double> p;
        for (int j = -half_width_; j <= half_width_; ++j) {
            p.push_back(momentum(j));
        }
        return p;
    }

    /// Centered DFT with rows ⟨p_j| and columns |ζ_n⟩:
    /// F_{jn} = ⟨p_j|ζ_n⟩ = e^{−i p_j ζ_n/ħ}/√N, the conjugate of ⟨ζ|p⟩ ∝ e^{ipζ/ħ}.
    [[nodiscard]] Matrix fourier() const {
        const Index n_pts = size();
        const double scale = 1.0 / std::sqrt(static_cast<double>(n_pts));
        Matrix f(n_pts, n_pts);
        for (int j = -half_width_; j <= half_width_; ++j) {
            for (int n = -half_width_; n <= half_width_; ++n) {
                // p_j ζ_n/ħ = 2π·jn/N, reduced mod N before scaling.
                const long r = ((static_cast<long>(j) * n) % n_pts + n_pts) % n_pts;
                const double phase = -2.0 * std::numbers::pi * static_cast<double>(r) /
                                     static_cast<double>(n_pts);
                f(index_of(j), index_of(n)) = std::polar(scale, phase);
            }
        }
        return f;
    }

    [[nodiscard]] DenseOperator position_operator() const {
        return DenseOperator::diagonal(positions());
    }

    /// p_Z = F†·diag(p)·F.
    [[nodiscard]] DenseOperator momentum_operator() const {
        const Matrix f = fourier();
        Vector p(size());
        for (int j = -half_width_; j <= half_width_; ++j) {
            p(index_of(j)) = momentum(j);
        }
        return DenseOperator(f.adjoint() * p.asDiagonal() * f, OperatorKind::hermitian);
    }

    friend bool operator==(const PointerGrid &, const PointerGrid &) = default;

  private:
    int half_width_;
    double spacing_;
    double hbar_;
};

inline PointerGrid make_pointer_grid(int half_width, double spacing, double hbar = 1.0) {
    return PointerGrid(half_width, spacing, hbar);
}

/// Measured observable: distinct eigenvalues sharing one degeneracy d.
class ObservableSpec {
  public:
    ObservableSpec(std::vector<double> eigenvalues, int degeneracy = 1)
        : eigenvalues_(std::move(eigenvalues)), degeneracy_(degeneracy) {
        if (eigenvalues_.empty()) {
            throw PreconditionError("observable needs at least one eigenvalue");
        }
        if (degeneracy_ < 1) {
            throw PreconditionError("degeneracy must be ≥ 1");
        }
        for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
            if (!std::isfinite(eigenvalues_[i])) {
                throw PreconditionError("observable eigenvalues must be finite");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (eigenvalues_[i] == eigenvalues_[j]) {
                    throw PreconditionError("observable eigenvalues must be distinct");
                }
            }
        }
    }

    /// A = diag(+1, −1).
    static ObservableSpec qubit() { return ObservableSpec({1.0, -1.0}, 1); }

    [[nodiscard]] const std::vector<double> &eigenvalues() const { return eigenvalues_; }
    [[nodiscard]] double eigenvalue(std::size_t i) const { return eigenvalues_.at(i); }
    [[nodiscard]] std::size_t count() const { return eigenvalues_.size(); }
    [[nodiscard]] int degeneracy() const { return degeneracy_; }
    [[nodiscard]] Index system_dim() const {
        return static_cast<Index>(eigenvalues_.size()) * degeneracy_;
    }

    [[nodiscard]] double max_abs_eigenvalue() const {
        double m = 0.0;
        for (double l : eigenvalues_) {
            m = std::max(m, std::abs(l));
        }
        return m;
    }

    /// Position of −λᵢ in the eigenvalue list, if present.
    [[nodiscard]] std::optional<std::size_t> negation_index(std::size_t i) const {
        const double target = -eigenvalues_.at(i);
        const double scale = std::max(1.0, max_abs_eigenvalue());
        for (std::size_t j = 0; j < eigenvalues_.size(); ++j) {
            if (std::abs(eigenvalues_[j] - target) <= 1e-12 * scale) {
                return j;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] bool has_symmetric_spectrum() const {
        for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
            if (!negation_index(i)) {
                return false;
            }
        }
        return true;
    }

    /// A in its eigenbasis.
    [[nodiscard]] DenseOperator matrix() const {
        std::vector<double> diag;
        for (double l : eigenvalues_) {
            for (int a = 0; a < degeneracy_; ++a) {
                diag.push_back(l);
            }
        }
        return DenseOperator::diagonal(diag);
    }

    friend bool operator==(const ObservableSpec &, const ObservableSpec &) = default;

  private:
    std::vector<double> eigenvalues_;
    int degeneracy_;
};

class MeasurementSetup {
  public:
    MeasurementSetup(ObservableSpec observable, PointerGrid grid, double coupling, double duration)
        : observable_(std::move(observable)), grid_(grid), coupling_(coupling),
          duration_(duration) {
        // g = 0 is accepted: it is the uncoupled control case.
        if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
            throw PreconditionError("coupling g must be nonnegative and finite");
        }
        if (!(duration > 0.0) || !std::isfinite(duration)) {
            throw PreconditionError("duration T must be positive");
        }
    }

    [[nodiscard]] const ObservableSpec &observable() const { return observable_; }
    [[nodiscard]] const PointerGrid &grid() const { return grid_; }
    [[nodiscard]] double coupling() const { return coupling_; }
    [[nodiscard]] double duration() const { return duration_; }
    [[nodiscard]] double hbar() const { return grid_.hbar(); }
    [[nodiscard]] Index system_dim() const { return observable_.system_dim(); }
    [[nodiscard]] Index pointer_dim() const { return grid_.size(); }
    [[nodiscard]] Index dim() const { return system_dim() * pointer_dim(); }

    [[nodiscard]] Index system_index(std::size_t eigen_index, int label) const {
        if (eigen_index >= observable_.count() || label < 0 ||
            label >= observable_.degeneracy()) {
            throw DimensionError("system_index: out of range");
        }
        return static_cast<Index>(eigen_index) * observable_.degeneracy() + label;
    }

    /// Basis index of |λᵢ, a⟩|ζ_n⟩.
    [[nodiscard]] Index basis_index(std::size_t eigen_index, int label, int n) const {
        return system_index(eigen_index, label) * pointer_dim() + grid_.index_of(n);
    }

    /// True when g·t·λ is an integer number of grid steps for every λ.
    [[nodiscard]] bool on_grid(double t) const {
        for (double l : observable_.eigenvalues()) {
            const double steps = coupling_ * t * l / grid_.spacing();
            if (std::abs(steps - std::round(steps)) > 1e-9) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const MeasurementSetup &, const MeasurementSetup &) = default;

  private:
    ObservableSpec observable_;
    PointerGrid grid_;
    double coupling_;
    double duration_;
};

/// |λᵢ, a⟩|ζ_n⟩.
inline ComplexVector product_state(const MeasurementSetup &setup, std::size_t eigen_index,
                                   int label, int n) {
    return ComplexVector::basis(setup.dim(), setup.basis_index(eigen_index, label, n));
}

/// |Q⟩|ready⟩ with the pointer calibrated at ζ = 0.
inline ComplexVector ready_state(const MeasurementSetup &setup, const ComplexVector &system) {
    if (system.dim() != setup.system_dim()) {
        throw DimensionError("ready_state: system state has wrong dimension");
    }
    const ComplexVector pointer =
        ComplexVector::basis(setup.pointer_dim(), setup.grid().index_of(0));
    return tensor_product(system, pointer);
}

inline ComplexVector ready_state(const MeasurementSetup &setup, std::size_t eigen_index,
                                 int label = 0) {
    return product_state(setup, eigen_index, label, 0);
}

/// e^{−i p_Z (mΔ)/ħ}: the cyclic shift |ζ_n⟩ ↦ |ζ_{n+m}⟩.
inline DenseOperator translation_map(const PointerGrid &grid, int m) {
    return hermitian_exponential(grid.momentum_operator(),
                                 m * grid.spacing() / grid.hbar());
}

/// H = −g·A ⊗ p_Z.
inline DenseOperator interaction_hamiltonian(const MeasurementSetup &setup,
                                             Index dimension_cap = kDefaultDimensionCap) {
    if (setup.dim() > dimension_cap) {
        std::ostringstream os;
        os << "interaction_hamiltonian: total dimension " << setup.dim() << " exceeds cap "
           << dimension_cap;
        throw DimensionError(os.str());
    }
    const Matrix a = setup.observable().matrix().matrix();
    const Matrix p = setup.grid().momentum_operator().matrix();
    return DenseOperator(-setup.coupling() * kronecker(a, p), OperatorKind::hermitian);
}

inline void require_time_in_window(const MeasurementSetup &setup, double t) {
    if (!(t >= 0.0 && t <= setup.duration())) {
        std::ostringstream os;
        os << "time " << t << " outside the coupling window [0, " << setup.duration() << "]";
        throw DomainError(os.str());
    }
}

/// U_t = e^{−iHt/ħ} for t ∈ [0, T].
inline DenseOperator evolution_operator(const MeasurementSetup &setup, double t) {
    require_time_in_window(setup, t);
    return hermitian_exponential(interaction_hamiltonian(setup), t / setup.hbar());
}

inline ComplexVector evolve(const MeasurementSetup &setup, const ComplexVector &state, double t) {
    if (state.dim() != setup.dim()) {
        throw DimensionError("evolve: state dimension does not match setup");
    }
    return evolution_operator(setup, t).apply(state);
}

struct BranchReadout {
    double eigenvalue = 0.0;
    double probability = 0.0;
    /// ⟨Z⟩ conditioned on the branch; empty for a zero-probability branch.
    std::optional<double> pointer_mean;
    /// −⟨Z⟩/(g·t); empty when the branch is empty or g·t = 0.
    std::optional<double> inferred_outcome;
};

struct ReadoutTable {
    double time = 0.0;
    bool on_grid = true;
    std::vector<BranchReadout> branches;

    [[nodiscard]] const char *translation_note() const {
        return on_grid ? "on-grid" : "off-grid, interpolated";
    }
};

inline constexpr double kEmptyBranchProbability = 1e-20;

/// Readout from basis probabilities over (system ⊗ pointer).
inline ReadoutTable readout_from_probabilities(const std::vector<double> &probs,
                                               const MeasurementSetup &setup, double t) {
    if (static_cast<Index>(probs.size()) != setup.dim()) {
        throw DimensionError("readout: probability vector has wrong dimension");
    }
    ReadoutTable table;
    table.time = t;
    table.on_grid = setup.on_grid(t);
    const auto &grid = setup.grid();
    const int d = setup.observable().degeneracy();
    for (std::size_t i = 0; i < setup.observable().count(); ++i) {
        BranchReadout br;
        br.eigenvalue = setup.observable().eigenvalue(i);
        double weighted = 0.0;
        for (int a = 0; a < d; ++a) {
            for (int n = -grid.half_width(); n <= grid.half_width(); ++n) {
                const double p = probs[static_cast<std::size_t>(setup.basis_index(i, a, n))];
                br.probability += p;
                weighted += p * grid.position(n);
            }
        }
        if (br.probability > kEmptyBranchProbability) {
            br.pointer_mean = weighted / br.probability;
            const double gt = setup.coupling() * t;
            if (gt != 0.0) {
                br.inferred_outcome = -*br.pointer_mean / gt;
            }
        }
        table.branches.push_back(br);
    }
    return table;
}

/// Branch probabilities and conditional pointer positions of a state at time
/// t (the end of the coupling window unless given).
inline ReadoutTable readout(const ComplexVector &state, const MeasurementSetup &setup,
                            std::optional<double> t = std::nullopt) {
    if (state.dim() != setup.dim()) {
        throw DimensionError("readout: state dimension does not match setup");
    }
    std::vector<double> probs(static_cast<std::size_t>(state.dim()));
    for (Index k = 0; k < state.dim(); ++k) {
        probs[static_cast<std::size_t>(k)] = std::norm(state[k]);
    }
    return readout_from_probabilities(probs, setup, t.value_or(setup.duration()));
}

/// Discretization defect of the canonical commutation relation:
/// ‖P_c([Z, p_Z] − iħ)φ‖ for a normalized Gaussian φ of width √N·Δ centered
/// on the grid, with P_c the projector on the central half |ζ| ≤ MΔ/2.
/// In finite dimension [Z, p_Z] = iħI is impossible (the trace of a
/// commutator vanishes), so only this weak form can converge.
inline double canonical_commutator_defect(const PointerGrid &grid) {
    const Matrix z = grid.position_operator().matrix();
    const Matrix p = grid.momentum_operator().matrix();
    const Matrix defect = z * p - p * z - Complex(0.0, grid.hbar()) * Matrix::Identity(grid.size(), grid.size());
    const double sigma = std::sqrt(static_cast<double>(grid.size())) * grid.spacing();
    Vector phi(grid.size());
    for (int n = -grid.half_width(); n <= grid.half_width(); ++n) {
        const double x = grid.position(n) / sigma;
        phi(grid.index_of(n)) = std::exp(-0.5 * x * x);
    }
    phi.normalize();
    Vector r = defect * phi;
    for (int n = -grid.half_width(); n <= grid.half_width(); ++n) {
        if (2 * std::abs(n) > grid.half_width()) {
            r(grid.index_of(n)) = 0.0;
        }
    }
    return r.norm();
}

} // namespace qmsym
