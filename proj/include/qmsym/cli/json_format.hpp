#pragma once

// Deterministic JSON text: sorted keys, two-space indentation, every float
// written with 17 significant digits, non-finite numbers written as null.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace qmsym::cli {

inline std::string format_double(double x) {
    if (!std::isfinite(x)) {
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline void dump_json_into(const nlohmann::json &j, std::string &out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            out += nlohmann::json(it.key()).dump();
            out += ": ";
            dump_json_into(it.value(), out, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            dump_json_into(j[i], out, depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case nlohmann::json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace detail

inline std::string dump_json(const nlohmann::json &j) {
    std::string out;
    detail::dump_json_into(j, out, 0);
    return out;
}

} // namespace qmsym::cli
