#pragma once

// Run configuration shared by the CLI and config files.
//
// JSON layout:
//   {
//     "potential": {"family": "Coulomb", "params": {"e2": 1.0}},
//     "units": {"hbar": 1.0, "mass": 1.0},
//     "l": 0, "n_max": 3, "n": 0, "samples": 1000,
//     "grid": {"x_min": 1e-4, "x_max": 80.0, "n_points": 4000},   (optional)
//     "rel_tol": 1e-5,
//     "output_format": "json"
//   }
// A file may instead hold {"defaults": {...}, "runs": [{...}, ...]}; each run
// is the defaults object overlaid with the run's own keys.

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "specbound/errors.hpp"
#include "specbound/numerics/finite_difference.hpp"
#include "specbound/potentials/families.hpp"

namespace specbound {

enum class OutputFormat { json, csv };

inline std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline OutputFormat parse_output_format(std::string_view s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw InvalidParameters("output format must be 'json' or 'csv', got '" + std::string(s) + "'");
}

/// Every default in one place.
struct Defaults {
    static constexpr double hbar = 1.0;
    static constexpr double mass = 1.0;
    static constexpr int l = 0;
    static constexpr int n_max = 3;
    static constexpr int n = 0;
    static constexpr int samples = 1000;
    static constexpr double rel_tol = 1e-5;
    static constexpr OutputFormat output_format = OutputFormat::json;
    static constexpr const char* format_env = "SPECBOUND_DEFAULT_FORMAT";
};

/// json unless SPECBOUND_DEFAULT_FORMAT says otherwise.
inline OutputFormat default_output_format() {
    if (const char* env = std::getenv(Defaults::format_env); env != nullptr && *env != '\0') {
        return parse_output_format(env);
    }
    return Defaults::output_format;
}

struct RunConfig {
    PotentialSpec potential = Coulomb{1.0};
    UnitsConfig units{Defaults::hbar, Defaults::mass};
    int l = Defaults::l;
    int n_max = Defaults::n_max;
    int n = Defaults::n;
    int samples = Defaults::samples;
    std::optional<numerics::RadialGrid> grid;
    OutputFormat output_format = Defaults::output_format;
    double rel_tol = Defaults::rel_tol;

    void validate() const {
        specbound::validate(potential);
        units.validate();
        if (l < 0) throw InvalidParameters("l must be >= 0");
        if (n_max < 0) throw InvalidParameters("n_max must be >= 0");
        if (n < 0) throw InvalidParameters("n must be >= 0");
        if (samples < 3) throw InvalidParameters("samples must be >= 3");
        if (!(rel_tol > 0.0)) throw InvalidParameters("rel_tol must be > 0");
        if (grid) grid->validate();
    }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["potential"] = {{"family", std::string(family_name(c.potential))}, {"params", parameters_of(c.potential)}};
    j["units"] = {{"hbar", c.units.hbar}, {"mass", c.units.mass}};
    j["l"] = c.l;
    j["n_max"] = c.n_max;
    j["n"] = c.n;
    j["samples"] = c.samples;
    if (c.grid) j["grid"] = {{"x_min", c.grid->x_min}, {"x_max", c.grid->x_max}, {"n_points", c.grid->n_points}};
    j["rel_tol"] = c.rel_tol;
    j["output_format"] = std::string(to_string(c.output_format));
    return j;
}

namespace detail {

template <class T>
T get_field(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidParameters(std::string("config: field '") + key + "' has the wrong type");
    }
}

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> known,
                                std::string_view where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw InvalidParameters("config: unknown key '" + key + "' in " + std::string(where));
    }
}

}  // namespace detail

/// Parse one run; missing keys take their defaults (output_format from the
/// environment). Throws InvalidParameters on malformed input.
inline RunConfig run_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidParameters("config: expected a JSON object");
    detail::reject_unknown_keys(j, {"potential", "units", "l", "n_max", "n", "samples", "grid", "rel_tol", "output_format"},
                                "run");
    RunConfig c;
    if (!j.contains("potential")) throw InvalidParameters("config: missing 'potential'");
    const auto& p = j.at("potential");
    if (!p.is_object() || !p.contains("family")) throw InvalidParameters("config: 'potential' needs a 'family'");
    const auto family = detail::get_field<std::string>(p, "family", "");
    const auto params = detail::get_field<std::map<std::string, double>>(p, "params", {});
    c.potential = make_potential(family, params);

    if (j.contains("units")) {
        const auto& u = j.at("units");
        if (!u.is_object()) throw InvalidParameters("config: 'units' must be an object");
        detail::reject_unknown_keys(u, {"hbar", "mass"}, "units");
        c.units.hbar = detail::get_field(u, "hbar", Defaults::hbar);
        c.units.mass = detail::get_field(u, "mass", Defaults::mass);
    }
    c.l = detail::get_field(j, "l", Defaults::l);
    c.n_max = detail::get_field(j, "n_max", Defaults::n_max);
    c.n = detail::get_field(j, "n", Defaults::n);
    c.samples = detail::get_field(j, "samples", Defaults::samples);
    c.rel_tol = detail::get_field(j, "rel_tol", Defaults::rel_tol);
    if (j.contains("grid") && !j.at("grid").is_null()) {
        const auto& g = j.at("grid");
        if (!g.is_object()) throw InvalidParameters("config: 'grid' must be an object");
        detail::reject_unknown_keys(g, {"x_min", "x_max", "n_points"}, "grid");
        if (!g.contains("x_min") || !g.contains("x_max") || !g.contains("n_points")) {
            throw InvalidParameters("config: 'grid' needs x_min, x_max and n_points");
        }
        c.grid = numerics::RadialGrid{detail::get_field(g, "x_min", 0.0), detail::get_field(g, "x_max", 0.0),
                                      detail::get_field(g, "n_points", 0)};
    }
    c.output_format = j.contains("output_format")
                          ? parse_output_format(detail::get_field<std::string>(j, "output_format", ""))
                          : default_output_format();
    c.validate();
    return c;
}

/// One or more runs from a parsed config document.
inline std::vector<RunConfig> run_configs_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InvalidParameters("config: expected a JSON object");
    if (!doc.contains("runs")) return {run_config_from_json(doc)};
    detail::reject_unknown_keys(doc, {"defaults", "runs"}, "sweep");
    const auto defaults = doc.value("defaults", nlohmann::json::object());
    if (!defaults.is_object()) throw InvalidParameters("config: 'defaults' must be an object");
    const auto& runs = doc.at("runs");
    if (!runs.is_array() || runs.empty()) throw InvalidParameters("config: 'runs' must be a non-empty array");
    std::vector<RunConfig> out;
    for (const auto& r : runs) {
        nlohmann::json merged = defaults;
        merged.update(r);
        out.push_back(run_config_from_json(merged));
    }
    return out;
}

inline nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameters(std::string("config: ") + e.what());
    }
}

inline std::vector<RunConfig> load_run_configs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameters("config: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return run_configs_from_json(parse_json_text(text));
}

}  // namespace specbound
