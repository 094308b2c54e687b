#pragma once

// Report serialization, distribution export and scenario dispatch.

#include <Eigen/Core>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmsym/cli/config.hpp"
#include "qmsym/cli/json_format.hpp"
#include "qmsym/measurement.hpp"
#include "qmsym/scenario.hpp"
#include "qmsym/symmetry.hpp"

namespace qmsym::cli {

inline constexpr const char *kVersion = "0.1.0";
inline constexpr const char *kReportFormat = "qmsym-report/1";

/// Exit statuses of the command-line tool.
enum class ExitCode : int { pass = 0, usage = 1, config = 2, certification = 3, numerical = 4 };

inline ExitCode exit_code_for(ErrorCategory c) {
    return c == ErrorCategory::numerical ? ExitCode::numerical : ExitCode::config;
}

namespace detail {

template <class T>
nlohmann::json optional_json(const std::optional<T> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace detail

inline nlohmann::json to_json(const SwapCertificate &c) {
    nlohmann::json j;
    j["construction"] = to_string(c.construction);
    j["commutator_residual"] = c.commutator_residual;
    j["unitarity_defect"] = c.unitarity_defect;
    j["swap_residual"] = c.swap_residual;
    j["cross_construction_distance"] = detail::optional_json(c.cross_construction_distance);
    j["intertwining_residual"] = detail::optional_json(c.intertwining_residual);
    j["exact_index_violations"] = detail::optional_json(c.exact_index_violations);
    j["continuum_amplitude_factor"] = detail::optional_json(c.continuum_amplitude_factor);
    j["note"] = c.note;
    j["pass"] = c.pass;
    return j;
}

inline nlohmann::json to_json(const IsomorphismReport &r) {
    nlohmann::json j;
    j["sample_times"] = r.sample_times;
    j["state_residuals"] = r.state_residuals;
    j["max_state_residual"] = r.max_state_residual();
    j["hamiltonian_residual"] = r.hamiltonian_residual;
    j["unitarity_defect"] = r.unitarity_defect;
    j["phase_insensitive"] = r.phase_insensitive;
    j["pass"] = r.pass;
    return j;
}

inline nlohmann::json to_json(const DistinctnessWitness &w) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &e : w.entries) {
        entries.push_back({{"observable", e.observable},
                           {"first", e.first},
                           {"second", e.second},
                           {"gap", e.gap}});
    }
    return {{"entries", entries}, {"distinct", w.distinct}};
}

inline nlohmann::json to_json(const ReadoutTable &t) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto &b : t.branches) {
        branches.push_back({{"eigenvalue", b.eigenvalue},
                            {"probability", b.probability},
                            {"pointer_mean", detail::optional_json(b.pointer_mean)},
                            {"inferred_outcome", detail::optional_json(b.inferred_outcome)}});
    }
    return {{"time", t.time}, {"translation", t.translation_note()}, {"branches", branches}};
}

inline nlohmann::json to_json(const WorldSummary &w) {
    nlohmann::json readouts = nlohmann::json::array();
    for (const auto &r : w.readouts) {
        readouts.push_back(to_json(r));
    }
    return {{"label", w.label}, {"outcomes", w.outcomes}, {"readouts", readouts}};
}

inline nlohmann::json to_json(const NamedCheck &c) {
    return {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

inline nlohmann::json to_json(const NegativeControl &c) {
    return {{"description", c.description},
            {"hamiltonian_residual", c.hamiltonian_residual},
            {"rejected", c.rejected}};
}

inline nlohmann::json meta_json(const RunConfig &config) {
    std::ostringstream eigen;
    eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
    return {{"config", config_to_json(config)},
            {"versions",
             {{"qmsym", kVersion}, {"eigen", eigen.str()}, {"format", kReportFormat}}}};
}

inline nlohmann::json to_json(const ScenarioReport &r) {
    nlohmann::json j;
    j["scenario"] = r.scenario;
    j["certificates"] = nlohmann::json::array();
    for (const auto &c : r.certificates) j["certificates"].push_back(to_json(c));
    j["worlds"] = nlohmann::json::array();
    for (const auto &w : r.worlds) j["worlds"].push_back(to_json(w));
    j["isomorphisms"] = nlohmann::json::array();
    j["distinctness"] = nlohmann::json::array();
    for (const auto &p : r.pairs) {
        const nlohmann::json pair = {p.first, p.second};
        nlohmann::json iso = to_json(p.isomorphism);
        iso["pair"] = pair;
        j["isomorphisms"].push_back(std::move(iso));
        nlohmann::json dist = to_json(p.witness);
        dist["pair"] = pair;
        j["distinctness"].push_back(std::move(dist));
    }
    j["checks"] = nlohmann::json::array();
    for (const auto &c : r.checks) j["checks"].push_back(to_json(c));
    j["controls"] = nlohmann::json::array();
    for (const auto &c : r.controls) j["controls"].push_back(to_json(c));
    j["notes"] = r.notes;
    j["pass"] = r.pass;
    return j;
}

inline nlohmann::json build_report(const RunConfig &config, const ScenarioReport &report) {
    nlohmann::json j = to_json(report);
    j["meta"] = meta_json(config);
    return j;
}

inline std::string emit_report(const RunConfig &config, const ScenarioReport &report) {
    return dump_json(build_report(config, report)) + "\n";
}

inline std::string emit_report(const ScenarioReport &report) {
    return dump_json(to_json(report)) + "\n";
}

inline std::string emit_report(const SwapCertificate &c) { return dump_json(to_json(c)) + "\n"; }

inline std::string emit_report(const IsomorphismReport &r) { return dump_json(to_json(r)) + "\n"; }

/// zeta,branch_lambda,probability for every (grid point, eigenvalue) pair,
/// degeneracy labels summed out. Rows ordered by ζ, then by eigenvalue index.
inline std::string emit_distribution_csv(const ComplexVector &state, const MeasurementSetup &setup) {
    if (state.dim() != setup.dim()) {
        throw DimensionError("emit_distribution_csv: state dimension " + std::to_string(state.dim()) +
                             " does not match setup dimension " + std::to_string(setup.dim()));
    }
    const auto &obs = setup.observable();
    const auto &grid = setup.grid();
    const int m = grid.half_width();
    std::string out = "zeta,branch_lambda,probability\n";
    for (int n = -m; n <= m; ++n) {
        for (std::size_t i = 0; i < obs.count(); ++i) {
            double p = 0.0;
            for (int a = 0; a < obs.degeneracy(); ++a) {
                p += std::norm(state[setup.basis_index(i, a, n)]);
            }
            out += format_double(grid.position(n));
            out += ',';
            out += format_double(obs.eigenvalue(i));
            out += ',';
            out += format_double(p);
            out += '\n';
        }
    }
    return out;
}

/// Ready pointer with the system in the given eigenstate, or in the uniform
/// superposition of all eigenvalues when none is selected.
inline ComplexVector distribution_initial_state(const MeasurementSetup &setup,
                                                std::optional<double> branch) {
    const auto &obs = setup.observable();
    if (branch) {
        for (std::size_t i = 0; i < obs.count(); ++i) {
            if (std::abs(obs.eigenvalue(i) - *branch) <= 1e-12 * std::max(1.0, std::abs(*branch))) {
                return ready_state(setup, i);
            }
        }
        std::ostringstream os;
        os << "branch " << *branch << " is not an eigenvalue of the observable";
        throw ConfigError("branch", os.str());
    }
    Vector sys = Vector::Zero(static_cast<Index>(setup.system_dim()));
    for (std::size_t i = 0; i < obs.count(); ++i) {
        sys[static_cast<Index>(setup.system_index(i, 0))] = 1.0;
    }
    return ready_state(setup, ComplexVector(sys).normalized());
}

inline std::string export_distribution(const RunConfig &config, double t,
                                       std::optional<double> branch = std::nullopt) {
    if (uses_scaling_model(config.scenario)) {
        throw ConfigError("scenario", "distribution export needs a pointer measurement scenario");
    }
    const MeasurementSetup setup = config.params.setup();
    if (t < 0.0 || t > setup.duration()) {
        std::ostringstream os;
        os << "time " << t << " outside [0, T]";
        throw ConfigError("time", os.str());
    }
    const ComplexVector psi = evolve(setup, distribution_initial_state(setup, branch), t);
    return emit_distribution_csv(psi, setup);
}

inline ScenarioReport run_scenario(const RunConfig &config) {
    switch (config.scenario) {
    case ScenarioKind::prince_pauper: return run_prince_pauper(config.params);
    case ScenarioKind::multiworld: return run_multiworld(config.params);
    case ScenarioKind::classical_level: return run_classical_level(config.params);
    case ScenarioKind::certify_lemma1: return run_certify_lemma1(config.params);
    case ScenarioKind::certify_lemma2: return run_certify_lemma2(config.params);
    }
    throw ConfigError("scenario", "unknown scenario");
}

} // namespace qmsym::cli
