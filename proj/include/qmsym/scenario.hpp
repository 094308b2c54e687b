#pragma once

/**
 * @file
 * End-to-end experiments built from the measurement model:
 *
 *  - prince/pauper: one qubit measured into a pointer; the parity swap maps
 *    the |+⟩ world onto the |−⟩ world while preserving H.
 *  - multiworld: k independent qubit measurements; all 2^k outcome patterns
 *    are pairwise isomorphic under products of per-factor swaps.
 *  - classical level: two distinct eigenvalues of a continuous-spectrum
 *    surrogate related by an H-preserving scaling.
 */

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmsym/bqs.hpp"
#include "qmsym/measurement.hpp"
#include "qmsym/random.hpp"
#include "qmsym/symmetry.hpp"
#include "qmsym/tensor.hpp"

namespace qmsym {

inline constexpr Index kDefaultVectorCap = 65536;
inline constexpr int kMaxQubits = 3;

struct ScenarioConfig {
    int half_width = 8;      // M
    double spacing = 0.25;   // Δ
    double coupling = 1.0;   // g
    double duration = 1.0;   // T
    double hbar = 1.0;
    int qubits = 1;          // k
    std::vector<double> eigenvalues{1.0, -1.0};
    int degeneracy = 1;
    double tol = 1e-10;
    /// Empty means {0, T/4, T/2, 3T/4, T}.
    std::vector<double> sample_times;
    bool phase_insensitive = false;
    std::uint64_t seed = 0;
    double lambda1 = 1.0;
    double lambda2 = 2.0;
    int exponent_range = 4;
    Index dimension_cap = kDefaultVectorCap;

    [[nodiscard]] std::vector<double> times() const {
        return sample_times.empty() ? default_sample_times(duration) : sample_times;
    }

    [[nodiscard]] MeasurementSetup setup() const {
        return MeasurementSetup(ObservableSpec(eigenvalues, degeneracy),
                                make_pointer_grid(half_width, spacing, hbar), coupling, duration);
    }

    [[nodiscard]] IsomorphismOptions isomorphism_options() const { return {tol, phase_insensitive}; }

    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

/// Guards shared by every scenario that builds pointer setups. Throws
/// ConfigError naming the offending field.
inline void validate_measurement_config(const ScenarioConfig &c) {
    if (c.half_width < 1) throw ConfigError("M", "M must be ≥ 1");
    if (!(c.spacing > 0.0)) throw ConfigError("delta", "grid spacing must be > 0");
    if (!(c.hbar > 0.0)) throw ConfigError("hbar", "ħ must be > 0");
    if (!(c.coupling >= 0.0)) throw ConfigError("g", "coupling must be ≥ 0");
    if (!(c.duration > 0.0)) throw ConfigError("T", "duration must be > 0");
    if (c.qubits < 1 || c.qubits > kMaxQubits) {
        throw ConfigError("k", "qubit count must be in [1, 3]");
    }
    if (!(c.tol > 0.0)) throw ConfigError("tol", "tolerance must be > 0");
    if (c.degeneracy < 1) throw ConfigError("degeneracy", "degeneracy must be ≥ 1");
    try {
        (void)ObservableSpec(c.eigenvalues, c.degeneracy);
    } catch (const Error &e) {
        throw ConfigError("eigenvalues", e.what());
    }
    const auto times = c.times();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > c.duration) {
            std::ostringstream os;
            os << "sample time " << times[i] << " outside [0, T]";
            throw ConfigError("sample_times[" + std::to_string(i) + "]", os.str());
        }
        if (i > 0 && times[i] < times[i - 1]) {
            throw ConfigError("sample_times", "sample times must be sorted");
        }
    }
    double lambda_max = 0.0;
    for (double l : c.eigenvalues) {
        lambda_max = std::max(lambda_max, std::abs(l));
    }
    const double travel = c.coupling * c.duration * lambda_max;
    const double room = c.half_width * c.spacing / 2.0;
    if (travel > room * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "pointer wraparound: g·T·λ_max = " << travel << " exceeds M·Δ/2 = " << room;
        throw ConfigError("M", os.str());
    }
    const Index factor_dim = static_cast<Index>(c.eigenvalues.size()) * c.degeneracy *
                             (2 * Index{c.half_width} + 1);
    Index total = 1;
    for (int i = 0; i < c.qubits; ++i) {
        total *= factor_dim;
        if (total > c.dimension_cap) {
            std::ostringstream os;
            os << "total dimension exceeds cap " << c.dimension_cap;
            throw ConfigError("k", os.str());
        }
    }
}

inline void validate_scaling_config(const ScenarioConfig &c) {
    if (c.lambda1 == 0.0) throw ConfigError("lambda1", "λ₁ must be non-null");
    if (c.lambda2 == 0.0) throw ConfigError("lambda2", "λ₂ must be non-null");
    if (c.exponent_range < 1) {
        throw ConfigError("ratio_exponent_range", "exponent range must be ≥ 1");
    }
    if (c.degeneracy < 1) throw ConfigError("degeneracy", "degeneracy must be ≥ 1");
    if (!(c.coupling >= 0.0)) throw ConfigError("g", "coupling must be ≥ 0");
    if (!(c.duration > 0.0)) throw ConfigError("T", "duration must be > 0");
    if (!(c.hbar > 0.0)) throw ConfigError("hbar", "ħ must be > 0");
    if (!(c.tol > 0.0)) throw ConfigError("tol", "tolerance must be > 0");
    for (double t : c.times()) {
        if (t < 0.0 || t > c.duration) throw ConfigError("sample_times", "sample time outside [0, T]");
    }
}

struct NamedCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline NamedCheck make_check(std::string name, double value, double tol) {
    return {std::move(name), value, tol, value <= tol};
}

struct WorldSummary {
    std::string label;
    /// Eigenvalue selected on each factor.
    std::vector<double> outcomes;
    /// Readout of each factor at t = T (empty for the diagonal model).
    std::vector<ReadoutTable> readouts;
};

struct PairCertificate {
    std::size_t first = 0;
    std::size_t second = 0;
    IsomorphismReport isomorphism;
    DistinctnessWitness witness;
};

struct NegativeControl {
    std::string description;
    double hamiltonian_residual = 0.0;
    bool rejected = false;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<WorldSummary> worlds;
    std::vector<SwapCertificate> certificates;
    std::vector<PairCertificate> pairs;
    std::vector<NamedCheck> checks;
    std::vector<NegativeControl> controls;
    std::vector<std::string> notes;
    bool pass = false;

    void finalize() {
        bool ok = true;
        for (const auto &c : certificates) ok = ok && c.pass;
        for (const auto &p : pairs) ok = ok && p.isomorphism.pass && p.witness.distinct;
        for (const auto &c : checks) ok = ok && c.pass;
        pass = ok;
    }
};

namespace detail {

inline std::string format_outcome(double l) {
    std::ostringstream os;
    os << (l >= 0 ? "+" : "") << l;
    return os.str();
}

inline DenseOperator pointer_position_observable(const MeasurementSetup &setup) {
    return tensor_product(DenseOperator::identity(setup.system_dim()),
                          setup.grid().position_operator());
}

inline DenseOperator system_observable(const MeasurementSetup &setup) {
    return tensor_product(setup.observable().matrix(), DenseOperator::identity(setup.pointer_dim()));
}

/// First eigenvalue and its negation: the two worlds of a single measurement.
inline std::pair<std::size_t, std::size_t> outcome_pair(const MeasurementSetup &setup) {
    require_symmetric_spectrum(setup);
    const std::size_t first = 0;
    const std::size_t second = *setup.observable().negation_index(first);
    if (first == second) {
        throw PreconditionError("the first eigenvalue is 0; no distinct outcome pair");
    }
    return {first, second};
}

} // namespace detail

/// Random unitary against the prince/pauper pair: the Hamiltonian condition
/// should fail by a wide margin.
inline NegativeControl random_unitary_control(const DenseOperator &h, std::uint64_t seed) {
    Rng rng(seed);
    const DenseOperator u = random_unitary(h.dim(), rng);
    NegativeControl c;
    c.description = "random unitary (seed " + std::to_string(seed) + ") vs Hamiltonian condition";
    c.hamiltonian_residual = conjugation_residual(u, h, h);
    c.rejected = c.hamiltonian_residual > 0.1;
    return c;
}

inline ScenarioReport run_prince_pauper(const ScenarioConfig &config) {
    validate_measurement_config(config);
    if (config.qubits != 1) {
        throw ConfigError("k", "prince-pauper runs a single measurement (k = 1)");
    }
    const MeasurementSetup setup = config.setup();
    const auto [plus, minus] = detail::outcome_pair(setup);
    const auto times = config.times();
    const double t_end = setup.duration();

    ScenarioReport report;
    report.scenario = "prince-pauper";
    const SwapTolerances tol = SwapTolerances::uniform(config.tol);
    report.certificates.push_back(certify_lemma1(setup, tol));

    const DenseOperator h = interaction_hamiltonian(setup);
    const DenseOperator s = parity_swap(setup);
    const ComplexVector ready_plus = ready_state(setup, plus);
    const ComplexVector ready_minus = ready_state(setup, minus);
    const BQSTriple prince = make_bqs(h, ready_plus, times, t_end, setup.hbar());
    const BQSTriple pauper = make_bqs(h, ready_minus, times, t_end, setup.hbar());

    PairCertificate pair;
    pair.first = 0;
    pair.second = 1;
    pair.isomorphism = check_isomorphism(s, prince, pauper, config.isomorphism_options());

    const ComplexVector prince_end = prince.state_at(t_end);
    const ComplexVector pauper_end = pauper.state_at(t_end);
    const std::vector<NamedObservable<DenseOperator>> frame{
        {"pointer Z", detail::pointer_position_observable(setup)},
        {"system A", detail::system_observable(setup)},
    };
    pair.witness = distinctness_witness(prince_end, pauper_end, frame, config.tol);
    report.pairs.push_back(std::move(pair));

    const double l_plus = setup.observable().eigenvalue(plus);
    const double l_minus = setup.observable().eigenvalue(minus);
    report.worlds.push_back({"prince (λ=" + detail::format_outcome(l_plus) + ")", {l_plus},
                             {readout(prince_end, setup)}});
    report.worlds.push_back({"pauper (λ=" + detail::format_outcome(l_minus) + ")", {l_minus},
                             {readout(pauper_end, setup)}});

    report.checks.push_back(make_check("S maps prince to pauper at T",
                                       distance(s.apply(prince_end), pauper_end), config.tol));
    report.checks.push_back(make_check("S fixes the ready pointer: S|+⟩|ready⟩ = |−⟩|ready⟩",
                                       distance(s.apply(ready_plus), ready_minus), config.tol));

    report.controls.push_back(random_unitary_control(h, config.seed));
    if (!setup.on_grid(t_end)) {
        report.notes.emplace_back("pointer displacement off-grid, interpolated");
    }
    if (setup.coupling() == 0.0) {
        report.notes.emplace_back("g = 0: worlds differ only through the system observable");
    }
    report.finalize();
    return report;
}

/// The swap relating outcome patterns `from` and `to`: Sᵢ on every factor
/// where the patterns differ, identity elsewhere.
inline ProductOperator pattern_swap(const DenseOperator &factor_swap, std::size_t from,
                                    std::size_t to, std::size_t factors) {
    std::vector<DenseOperator> f;
    for (std::size_t i = 0; i < factors; ++i) {
        const bool flip = ((from ^ to) >> (factors - 1 - i)) & 1U;
        f.push_back(flip ? factor_swap : DenseOperator::identity(factor_swap.dim()));
    }
    return ProductOperator(std::move(f));
}

inline ScenarioReport run_multiworld(const ScenarioConfig &config) {
    validate_measurement_config(config);
    const MeasurementSetup setup = config.setup();
    const auto [plus, minus] = detail::outcome_pair(setup);
    const auto k = static_cast<std::size_t>(config.qubits);
    const auto times = config.times();
    const double t_end = setup.duration();

    ScenarioReport report;
    report.scenario = "multiworld";
    report.certificates.push_back(certify_lemma1(setup, SwapTolerances::uniform(config.tol)));

    const DenseOperator h_factor = interaction_hamiltonian(setup);
    const DenseOperator s_factor = parity_swap(setup);
    const LocalSum h(std::vector<DenseOperator>(k, h_factor));
    const TensorLayout &layout = h.layout();

    // World w: bit (k−1−i) of w selects the outcome on factor i (0 → first
    // eigenvalue, 1 → its negation).
    const std::size_t world_count = std::size_t{1} << k;
    std::vector<BasicQuantumStructure<LocalSum>> triples;
    std::vector<ComplexVector> finals;
    for (std::size_t w = 0; w < world_count; ++w) {
        WorldSummary summary;
        ComplexVector psi;
        for (std::size_t i = 0; i < k; ++i) {
            const bool flip = (w >> (k - 1 - i)) & 1U;
            const std::size_t idx = flip ? minus : plus;
            const ComplexVector factor_state = ready_state(setup, idx);
            psi = i == 0 ? factor_state : tensor_product(psi, factor_state);
            const double l = setup.observable().eigenvalue(idx);
            summary.outcomes.push_back(l);
            summary.label += (i ? "," : "") + detail::format_outcome(l);
        }
        triples.push_back(make_bqs(h, psi, times, t_end, setup.hbar()));
        finals.push_back(triples.back().state_at(t_end));
        for (std::size_t i = 0; i < k; ++i) {
            summary.readouts.push_back(
                readout_from_probabilities(local_probabilities(finals.back(), i, layout), setup, t_end));
        }
        report.worlds.push_back(std::move(summary));
    }

    std::vector<NamedObservable<LocalObservable>> frame;
    const DenseOperator z = detail::pointer_position_observable(setup);
    const DenseOperator a = detail::system_observable(setup);
    for (std::size_t i = 0; i < k; ++i) {
        frame.push_back({"Z[" + std::to_string(i) + "]", LocalObservable{i, z, layout}});
    }
    for (std::size_t i = 0; i < k; ++i) {
        frame.push_back({"A[" + std::to_string(i) + "]", LocalObservable{i, a, layout}});
    }

    for (std::size_t p = 0; p < world_count; ++p) {
        for (std::size_t q = p + 1; q < world_count; ++q) {
            PairCertificate pair;
            pair.first = p;
            pair.second = q;
            const ProductOperator s = pattern_swap(s_factor, p, q, k);
            pair.isomorphism = check_isomorphism(s, triples[p], triples[q], config.isomorphism_options());
            pair.witness = distinctness_witness(finals[p], finals[q], frame, config.tol);
            report.pairs.push_back(std::move(pair));
        }
    }

    // Group structure of the per-factor swaps.
    double involution = 0.0;
    double commutation = 0.0;
    std::vector<ProductOperator> single;
    for (std::size_t i = 0; i < k; ++i) {
        single.push_back(pattern_swap(s_factor, 0, std::size_t{1} << (k - 1 - i), k));
    }
    for (std::size_t i = 0; i < k; ++i) {
        const ProductOperator sq = single[i] * single[i];
        std::vector<std::vector<Matrix>> terms{{}, {}};
        for (std::size_t j = 0; j < k; ++j) {
            terms[0].push_back(sq.factor(j).matrix());
            terms[1].push_back(Matrix::Identity(sq.factor(j).dim(), sq.factor(j).dim()));
        }
        terms[1].front() = -terms[1].front();
        involution = std::max(involution, kron_sum_norm(terms));
        for (std::size_t j = i + 1; j < k; ++j) {
            commutation = std::max(commutation, commutator_norm(single[i], single[j]));
        }
    }
    report.checks.push_back(make_check("per-factor swaps are involutions", involution, config.tol));
    report.checks.push_back(make_check("per-factor swaps commute", commutation, config.tol));
    double factor_comm = 0.0;
    for (const auto &s : single) {
        factor_comm = std::max(factor_comm, commutator_norm(s, h));
    }
    report.checks.push_back(
        make_check("per-factor swaps commute with total H (relative)",
                   h.norm() > 0.0 ? factor_comm / h.norm() : factor_comm, config.tol));
    const auto expected_pairs = static_cast<double>(world_count * (world_count - 1) / 2);
    report.checks.push_back(make_check(
        "world count is 2^k", std::abs(static_cast<double>(report.worlds.size()) - static_cast<double>(world_count)), 0.0));
    report.checks.push_back(make_check(
        "pair count is C(2^k, 2)", std::abs(static_cast<double>(report.pairs.size()) - expected_pairs), 0.0));
    report.finalize();
    return report;
}

inline GeometricDiagonalModel make_scaling_model(const ScenarioConfig &config) {
    validate_scaling_config(config);
    const double ratio = std::abs(config.lambda2 / config.lambda1);
    return GeometricDiagonalModel(ratio, config.exponent_range, config.degeneracy,
                                  config.lambda1, config.coupling);
}

inline ScenarioReport run_classical_level(const ScenarioConfig &config) {
    const GeometricDiagonalModel model = make_scaling_model(config);
    const auto times = config.times();
    ScenarioReport report;
    report.scenario = "classical-level";
    const SwapCertificate cert = certify_lemma2(model, config.lambda1, config.lambda2,
                                                SwapTolerances::uniform(config.tol),
                                                config.duration, config.hbar, times);
    report.certificates.push_back(cert);
    if (config.lambda1 == config.lambda2) {
        report.notes.push_back(cert.note);
        report.worlds.push_back({"λ=" + detail::format_outcome(config.lambda1), {config.lambda1}, {}});
        report.finalize();
        return report;
    }

    const int sign = config.lambda2 / config.lambda1 > 0.0 ? +1 : -1;
    const PermutationOperator s(scaling_permutation(model, sign));
    const DiagonalOperator h = model.diagonal_hamiltonian();
    const auto start = *model.find_eigenvalue(config.lambda1);
    const auto target = *model.find_eigenvalue(config.lambda2);
    const std::vector<NamedObservable<DiagonalOperator>> frame{{"system A", model.diagonal_observable()}};
    for (int a = 0; a < model.degeneracy(); ++a) {
        const auto first = make_bqs(h, model.ready_state(start.lambda_sign, start.m, a), times,
                                    config.duration, config.hbar);
        const auto second = make_bqs(h, model.ready_state(target.lambda_sign, target.m, a), times,
                                     config.duration, config.hbar);
        PairCertificate pair;
        pair.first = report.worlds.size();
        pair.second = report.worlds.size() + 1;
        pair.isomorphism = check_isomorphism(s, first, second, config.isomorphism_options());
        pair.witness = distinctness_witness(first.state_at(config.duration),
                                            second.state_at(config.duration), frame, config.tol);
        report.worlds.push_back({"λ=" + detail::format_outcome(config.lambda1) + ", a=" + std::to_string(a),
                                 {config.lambda1}, {}});
        report.worlds.push_back({"λ=" + detail::format_outcome(config.lambda2) + ", a=" + std::to_string(a),
                                 {config.lambda2}, {}});
        report.pairs.push_back(std::move(pair));
    }
    report.notes.push_back(cert.note);
    report.finalize();
    return report;
}

inline ScenarioReport run_certify_lemma1(const ScenarioConfig &config) {
    validate_measurement_config(config);
    ScenarioReport report;
    report.scenario = "certify-lemma1";
    const MeasurementSetup setup = config.setup();
    report.certificates.push_back(certify_lemma1(setup, SwapTolerances::uniform(config.tol)));
    report.finalize();
    return report;
}

inline ScenarioReport run_certify_lemma2(const ScenarioConfig &config) {
    const GeometricDiagonalModel model = make_scaling_model(config);
    ScenarioReport report;
    report.scenario = "certify-lemma2";
    report.certificates.push_back(certify_lemma2(model, config.lambda1, config.lambda2,
                                                 SwapTolerances::uniform(config.tol),
                                                 config.duration, config.hbar, config.times()));
    if (!report.certificates.back().note.empty()) {
        report.notes.push_back(report.certificates.back().note);
    }
    report.finalize();
    return report;
}

} // namespace qmsym
