#pragma once

// Run configuration: JSON schema, defaults and validation.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qmsym/cli/json_format.hpp"
#include "qmsym/scenario.hpp"

namespace qmsym::cli {

enum class ScenarioKind { prince_pauper, multiworld, classical_level, certify_lemma1, certify_lemma2 };

inline const char *to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::prince_pauper: return "prince-pauper";
    case ScenarioKind::multiworld: return "multiworld";
    case ScenarioKind::classical_level: return "classical-level";
    case ScenarioKind::certify_lemma1: return "certify-lemma1";
    case ScenarioKind::certify_lemma2: return "certify-lemma2";
    }
    return "prince-pauper";
}

inline std::optional<ScenarioKind> scenario_from_string(std::string_view s) {
    for (auto k : {ScenarioKind::prince_pauper, ScenarioKind::multiworld,
                   ScenarioKind::classical_level, ScenarioKind::certify_lemma1,
                   ScenarioKind::certify_lemma2}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

struct RunConfig {
    ScenarioKind scenario = ScenarioKind::prince_pauper;
    ScenarioConfig params;

    friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

inline bool uses_scaling_model(ScenarioKind k) {
    return k == ScenarioKind::classical_level || k == ScenarioKind::certify_lemma2;
}

/// Re-runs every downstream guard for the selected scenario.
inline void validate(const RunConfig &config) {
    const auto &p = config.params;
    if (uses_scaling_model(config.scenario)) {
        validate_scaling_config(p);
        return;
    }
    validate_measurement_config(p);
    try {
        const MeasurementSetup setup = p.setup();
        require_symmetric_spectrum(setup);
        if (config.scenario != ScenarioKind::certify_lemma1) {
            (void)qmsym::detail::outcome_pair(setup);
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError("eigenvalues", e.what());
    }
    if (config.scenario == ScenarioKind::prince_pauper && p.qubits != 1) {
        throw ConfigError("k", "prince-pauper runs a single measurement (k = 1)");
    }
}

namespace detail {

inline double get_number(const nlohmann::json &v, const std::string &field) {
    if (!v.is_number()) {
        throw ConfigError(field, "expected a number");
    }
    return v.get<double>();
}

inline int get_int(const nlohmann::json &v, const std::string &field) {
    if (!v.is_number_integer()) {
        throw ConfigError(field, "expected an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < -1000000 || x > 1000000) {
        throw ConfigError(field, "integer out of range");
    }
    return static_cast<int>(x);
}

} // namespace detail

/// Parses the JSON config schema. Missing keys take defaults (ħ=1, M=8,
/// Δ=0.25, g=1, T=1, tol=1e−10, sample times {0, T/4, T/2, 3T/4, T}).
inline RunConfig parse_config(std::string_view text,
                              std::optional<ScenarioKind> scenario_override = std::nullopt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("$", "config must be a JSON object");
    }
    if (doc.contains("delta") && doc.contains("Δ")) {
        throw ConfigError("delta", "give either 'delta' or 'Δ', not both");
    }

    RunConfig config;
    auto &p = config.params;
    for (const auto &[key, value] : doc.items()) {
        if (key == "scenario") {
            if (!value.is_string()) throw ConfigError(key, "expected a string");
            const auto kind = scenario_from_string(value.get<std::string>());
            if (!kind) throw ConfigError(key, "unknown scenario '" + value.get<std::string>() + "'");
            config.scenario = *kind;
        } else if (key == "M") {
            p.half_width = detail::get_int(value, key);
        } else if (key == "delta" || key == "Δ") {
            p.spacing = detail::get_number(value, key);
        } else if (key == "g") {
            p.coupling = detail::get_number(value, key);
        } else if (key == "T") {
            p.duration = detail::get_number(value, key);
        } else if (key == "hbar") {
            p.hbar = detail::get_number(value, key);
        } else if (key == "k") {
            p.qubits = detail::get_int(value, key);
        } else if (key == "lambda1") {
            p.lambda1 = detail::get_number(value, key);
        } else if (key == "lambda2") {
            p.lambda2 = detail::get_number(value, key);
        } else if (key == "ratio_exponent_range") {
            p.exponent_range = detail::get_int(value, key);
        } else if (key == "tol") {
            p.tol = detail::get_number(value, key);
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
                throw ConfigError(key, "expected a nonnegative integer");
            }
            p.seed = value.get<std::uint64_t>();
        } else if (key == "sample_times") {
            if (!value.is_array()) throw ConfigError(key, "expected an array of numbers");
            p.sample_times.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                p.sample_times.push_back(
                    detail::get_number(value[i], key + "[" + std::to_string(i) + "]"));
            }
            if (p.sample_times.empty()) throw ConfigError(key, "must not be empty");
        } else if (key == "phase_insensitive") {
            if (!value.is_boolean()) throw ConfigError(key, "expected a boolean");
            p.phase_insensitive = value.get<bool>();
        } else if (key == "eigenvalues") {
            if (!value.is_array() || value.empty()) throw ConfigError(key, "expected a nonempty array");
            p.eigenvalues.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                p.eigenvalues.push_back(
                    detail::get_number(value[i], key + "[" + std::to_string(i) + "]"));
            }
        } else if (key == "degeneracy") {
            p.degeneracy = detail::get_int(value, key);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    if (scenario_override) {
        config.scenario = *scenario_override;
    }
    if (p.sample_times.empty()) {
        p.sample_times = p.times();
    }
    validate(config);
    return config;
}

inline nlohmann::json config_to_json(const RunConfig &config) {
    const auto &p = config.params;
    nlohmann::json j;
    j["scenario"] = to_string(config.scenario);
    j["M"] = p.half_width;
    j["delta"] = p.spacing;
    j["g"] = p.coupling;
    j["T"] = p.duration;
    j["hbar"] = p.hbar;
    j["k"] = p.qubits;
    j["lambda1"] = p.lambda1;
    j["lambda2"] = p.lambda2;
    j["ratio_exponent_range"] = p.exponent_range;
    j["tol"] = p.tol;
    j["seed"] = p.seed;
    j["sample_times"] = p.times();
    j["phase_insensitive"] = p.phase_insensitive;
    j["eigenvalues"] = p.eigenvalues;
    j["degeneracy"] = p.degeneracy;
    return j;
}

inline std::string serialize_config(const RunConfig &config) {
    return dump_json(config_to_json(config)) + "\n";
}

} // namespace qmsym::cli
