#pragma once

// Command dispatch for the `specbound` executable. Exit codes:
//   0  success
//   2  invalid input (bad flags, parameters, config)
//   3  no bound state (empty spectrum or missing level)
//   4  verification failure (tolerance, count mismatch, coarse grid)

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "specbound/errors.hpp"
#include "specbound/format.hpp"
#include "specbound/potentials/bound_state.hpp"
#include "specbound/potentials/catalog.hpp"
#include "specbound/potentials/families.hpp"
#include "specbound/run_config.hpp"
#include "specbound/verification.hpp"

namespace specbound::cli {

enum ExitCode : int { ok = 0, invalid_input = 2, no_bound_state = 3, verification_failed = 4 };

inline const std::vector<std::string> spectrum_columns{"n", "l", "energy", "residual", "branch", "p", "q"};
inline const std::vector<std::string> wavefunction_columns{"x", "psi", "psi_squared_weighted"};
inline const std::vector<std::string> verify_columns{"family", "l", "n", "analytic", "closed_form", "oracle",
                                                     "rel_diff_closed", "rel_diff_oracle", "grid_adequate", "pass"};

/// Raw flag values of one subcommand; resolve_runs applies the ones actually
/// given on top of the config.
struct Flags {
    std::string potential;
    std::vector<std::string> params;
    int l = Defaults::l;
    int n = Defaults::n;
    int n_max = Defaults::n_max;
    double hbar = Defaults::hbar;
    double mass = Defaults::mass;
    std::string grid;
    int samples = Defaults::samples;
    std::string format;
    double rel_tol = Defaults::rel_tol;
    std::string config;

    CLI::Option* o_potential = nullptr;
    CLI::Option* o_params = nullptr;
    CLI::Option* o_l = nullptr;
    CLI::Option* o_n = nullptr;
    CLI::Option* o_n_max = nullptr;
    CLI::Option* o_hbar = nullptr;
    CLI::Option* o_mass = nullptr;
    CLI::Option* o_grid = nullptr;
    CLI::Option* o_samples = nullptr;
    CLI::Option* o_format = nullptr;
    CLI::Option* o_rel_tol = nullptr;
};

inline void add_run_flags(CLI::App& cmd, Flags& f) {
    f.o_potential = cmd.add_option("--potential", f.potential, "Potential family (see `list`)");
    f.o_params = cmd.add_option("--param", f.params, "Parameter as key=value (repeatable)")->allow_extra_args(false);
    f.o_l = cmd.add_option("--l", f.l, "Angular momentum quantum number");
    f.o_n_max = cmd.add_option("--n-max", f.n_max, "Highest radial quantum number");
    f.o_hbar = cmd.add_option("--hbar", f.hbar, "Reduced Planck constant");
    f.o_mass = cmd.add_option("--mass", f.mass, "Mass");
    f.o_grid = cmd.add_option("--grid", f.grid, "Oracle/quadrature grid as xmin,xmax,npts");
    f.o_rel_tol = cmd.add_option("--rel-tol", f.rel_tol, "Relative tolerance against the oracle");
    cmd.add_option("--config", f.config, "JSON run configuration");
}

inline void add_format_flag(CLI::App& cmd, Flags& f) {
    f.o_format = cmd.add_option("--format", f.format, "Output format: json or csv");
}

inline double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidParameters(what + ": '" + text + "' is not a number");
    }
    if (used != text.size()) throw InvalidParameters(what + ": '" + text + "' is not a number");
    return v;
}

inline numerics::RadialGrid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 3) throw InvalidParameters("--grid expects xmin,xmax,npts");
    const double npts = parse_number(parts[2], "--grid npts");
    if (npts != std::floor(npts) || npts > 1e8) throw InvalidParameters("--grid npts must be an integer");
    numerics::RadialGrid g{parse_number(parts[0], "--grid xmin"), parse_number(parts[1], "--grid xmax"),
                           static_cast<int>(npts)};
    g.validate();
    return g;
}

inline std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw InvalidParameters("--param expects key=value, got '" + item + "'");
        out[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "--param " + item.substr(0, eq));
    }
    return out;
}

/// Config file runs (or one default run) with command-line flags applied on
/// top of each.
inline std::vector<RunConfig> resolve_runs(const Flags& f) {
    std::vector<RunConfig> runs;
    if (!f.config.empty()) {
        runs = load_run_configs(f.config);
    } else {
        if (f.o_potential == nullptr || f.o_potential->count() == 0) {
            throw InvalidParameters("--potential or --config is required");
        }
        RunConfig c;
        c.output_format = default_output_format();
        runs.push_back(c);
    }
    for (auto& c : runs) {
        if (f.o_potential && f.o_potential->count() > 0) {
            c.potential = make_potential(f.potential, parse_params(f.params));
        } else if (f.o_params && f.o_params->count() > 0) {
            auto values = parameters_of(c.potential);
            for (const auto& [k, v] : parse_params(f.params)) values[k] = v;
            c.potential = make_potential(family_name(c.potential), values);
        }
        if (f.o_l && f.o_l->count() > 0) c.l = f.l;
        if (f.o_n && f.o_n->count() > 0) c.n = f.n;
        if (f.o_n_max && f.o_n_max->count() > 0) c.n_max = f.n_max;
        if (f.o_hbar && f.o_hbar->count() > 0) c.units.hbar = f.hbar;
        if (f.o_mass && f.o_mass->count() > 0) c.units.mass = f.mass;
        if (f.o_grid && f.o_grid->count() > 0) c.grid = parse_grid(f.grid);
        if (f.o_samples && f.o_samples->count() > 0) c.samples = f.samples;
        if (f.o_format && f.o_format->count() > 0) c.output_format = parse_output_format(f.format);
        if (f.o_rel_tol && f.o_rel_tol->count() > 0) c.rel_tol = f.rel_tol;
        c.validate();
    }
    return runs;
}

inline OutputFormat list_format(const Flags& f, bool& text) {
    text = f.o_format == nullptr || f.o_format->count() == 0;
    return text ? OutputFormat::json : parse_output_format(f.format);
}

inline int cmd_list(const Flags& f, std::ostream& out) {
    bool text = false;
    const auto format = list_format(f, text);
    const auto families = list_families();
    if (text) {
        out << std::left << std::setw(6) << "case" << std::setw(20) << "family" << std::setw(12) << "branch"
            << std::setw(30) << "supported l" << "parameters\n";
        for (const auto& d : families) {
            std::string params;
            for (const auto& [name, unit] : d.parameters) params += (params.empty() ? "" : ", ") + name + " [" + unit + "]";
            out << std::setw(6) << d.case_number << std::setw(20) << d.name << std::setw(12) << d.branch
                << std::setw(30) << d.supported_l << params << '\n';
        }
        return ok;
    }
    if (format == OutputFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& d : families) {
            nlohmann::json params = nlohmann::json::array();
            for (const auto& [name, unit] : d.parameters) params.push_back({{"name", name}, {"unit", unit}});
            arr.push_back({{"case", d.case_number},
                           {"family", d.name},
                           {"branch", d.branch},
                           {"radial", d.radial},
                           {"supported_l", d.supported_l},
                           {"parameters", params}});
        }
        out << arr.dump(2) << '\n';
        return ok;
    }
    out << csv_row({"case", "family", "branch", "radial", "supported_l", "parameters"}) << '\n';
    for (const auto& d : families) {
        std::string params;
        for (const auto& [name, unit] : d.parameters) params += (params.empty() ? "" : ";") + name + ":" + unit;
        out << csv_row({std::to_string(d.case_number), d.name, d.branch, d.radial ? "true" : "false", d.supported_l,
                        params})
            << '\n';
    }
    return ok;
}

inline nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

inline std::string config_echo(const RunConfig& c) { return "# config=" + to_json(c).dump(); }

inline int cmd_spectrum(const std::vector<RunConfig>& runs, std::ostream& out) {
    const auto& c = runs.front();
    if (runs.size() != 1) throw InvalidParameters("spectrum takes a single run");
    const auto states = spectrum(c.potential, c.l, c.units, c.n_max, c.grid);
    if (c.output_format == OutputFormat::json) {
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& s : states) {
            levels.push_back({{"n", s.n},
                              {"l", s.l},
                              {"energy", s.energy},
                              {"residual", s.residual},
                              {"branch", std::string(to_string(s.branch()))},
                              {"p", s.p()},
                              {"q", s.q()}});
        }
        out << nlohmann::json{{"config", to_json(c)}, {"levels", levels}}.dump(2) << '\n';
    } else {
        out << config_echo(c) << '\n' << csv_row(spectrum_columns) << '\n';
        for (const auto& s : states) {
            out << csv_row({std::to_string(s.n), std::to_string(s.l), format_double(s.energy), format_double(s.residual),
                            std::string(to_string(s.branch())), format_double(s.p()), format_double(s.q())})
                << '\n';
        }
    }
    return states.empty() ? no_bound_state : ok;
}

inline int cmd_wavefunction(const std::vector<RunConfig>& runs, std::ostream& out, std::ostream& err) {
    if (runs.size() != 1) throw InvalidParameters("wavefunction takes a single run");
    const auto& c = runs.front();
    const auto states = spectrum(c.potential, c.l, c.units, c.n, c.grid);
    if (states.empty() || states.back().n != c.n) {
        err << "specbound: level n = " << c.n << " (l = " << c.l << ") is not bound\n";
        return no_bound_state;
    }
    const auto& st = states.back();
    const auto grid = c.grid ? *c.grid : covering_grid(c.potential, c.l, c.units, st.energy);
    const auto map = coordinate_map(c.potential);
    const double h = (grid.x_max - grid.x_min) / static_cast<double>(c.samples - 1);

    if (c.output_format == OutputFormat::json) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < c.samples; ++i) {
            const double x = grid.x_min + h * static_cast<double>(i);
            const double psi = wavefunction(st, x);
            rows.push_back({{"x", x}, {"psi", psi}, {"psi_squared_weighted", psi * psi * map.measure_factor(x)}});
        }
        out << nlohmann::json{{"config", to_json(c)},
                              {"energy", st.energy},
                              {"norm_constant", st.norm_constant},
                              {"samples", rows}}
                   .dump(2)
            << '\n';
    } else {
        out << config_echo(c) << '\n' << csv_row(wavefunction_columns) << '\n';
        for (int i = 0; i < c.samples; ++i) {
            const double x = grid.x_min + h * static_cast<double>(i);
            const double psi = wavefunction(st, x);
            out << csv_row({format_double(x), format_double(psi), format_double(psi * psi * map.measure_factor(x))})
                << '\n';
        }
    }
    return ok;
}

inline nlohmann::json report_json(const RunConfig& c, const VerificationReport& rep) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lv : rep.levels) {
        levels.push_back({{"n", lv.n},
                          {"analytic", lv.analytic},
                          {"closed_form", optional_json(lv.closed_form)},
                          {"oracle", optional_json(lv.oracle)},
                          {"rel_diff_closed", optional_json(lv.rel_diff_closed)},
                          {"rel_diff_oracle", optional_json(lv.rel_diff_oracle)},
                          {"pass", lv.pass}});
    }
    return {{"config", to_json(c)},
            {"family", std::string(family_name(c.potential))},
            {"l", c.l},
            {"grid_adequate", rep.grid_adequate},
            {"max_richardson_shift", rep.max_richardson_shift},
            {"count_discrepancy", rep.count_discrepancy},
            {"analytic_count", rep.analytic_count},
            {"oracle_count", rep.oracle_count},
            {"worst_rel_diff_oracle", rep.worst_rel_diff_oracle},
            {"worst_rel_diff_closed", rep.worst_rel_diff_closed},
            {"rel_tol", rep.rel_tol},
            {"pass", rep.pass},
            {"levels", levels}};
}

inline int cmd_verify(const std::vector<RunConfig>& runs, std::ostream& out) {
    bool any_failed = false;
    bool any_unbound = false;
    nlohmann::json reports = nlohmann::json::array();
    const bool csv = runs.front().output_format == OutputFormat::csv;
    if (csv) {
        for (const auto& c : runs) out << config_echo(c) << '\n';
        out << csv_row(verify_columns) << '\n';
    }
    for (const auto& c : runs) {
        const auto rep = verify(c.potential, c.l, c.units, c.n_max, c.rel_tol, c.grid);
        if (rep.levels.empty() && rep.oracle_count == 0) {
            any_unbound = true;
        } else if (!rep.pass) {
            any_failed = true;
        }
        if (csv) {
            for (const auto& lv : rep.levels) {
                out << csv_row({std::string(family_name(c.potential)), std::to_string(c.l), std::to_string(lv.n),
                                format_double(lv.analytic), format_optional(lv.closed_form), format_optional(lv.oracle),
                                format_optional(lv.rel_diff_closed), format_optional(lv.rel_diff_oracle),
                                rep.grid_adequate ? "true" : "false", lv.pass ? "true" : "false"})
                    << '\n';
            }
        } else {
            reports.push_back(report_json(c, rep));
        }
    }
    if (!csv) {
        out << (runs.size() == 1 ? reports.front() : nlohmann::json{{"pass", !any_failed && !any_unbound}, {"runs", reports}})
                   .dump(2)
            << '\n';
    }
    if (any_failed) return verification_failed;
    if (any_unbound) return no_bound_state;
    return ok;
}

/// Parse `args` (without the program name) and run. Every outcome maps to one
/// of the documented exit codes.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound-state spectra of exactly solvable potentials, checked against a finite-difference oracle",
                 "specbound"};
    app.require_subcommand(1);
    Flags list_flags;
    Flags spectrum_flags;
    Flags wave_flags;
    Flags verify_flags;
    auto* list = app.add_subcommand("list", "List the potential families");
    add_format_flag(*list, list_flags);
    auto* spec_cmd = app.add_subcommand("spectrum", "Bound-state energies");
    add_run_flags(*spec_cmd, spectrum_flags);
    add_format_flag(*spec_cmd, spectrum_flags);
    auto* wave_cmd = app.add_subcommand("wavefunction", "Sample a normalized bound state");
    add_run_flags(*wave_cmd, wave_flags);
    add_format_flag(*wave_cmd, wave_flags);
    wave_flags.o_n = wave_cmd->add_option("--n", wave_flags.n, "Radial quantum number");
    wave_flags.o_samples = wave_cmd->add_option("--samples", wave_flags.samples, "Number of sample points");
    auto* verify_cmd = app.add_subcommand("verify", "Compare analytic, closed-form and oracle levels");
    add_run_flags(*verify_cmd, verify_flags);
    add_format_flag(*verify_cmd, verify_flags);

    std::vector<std::string> argv_store{"specbound"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return invalid_input;
    }

    try {
        if (list->parsed()) return cmd_list(list_flags, out);
        if (spec_cmd->parsed()) return cmd_spectrum(resolve_runs(spectrum_flags), out);
        if (wave_cmd->parsed()) return cmd_wavefunction(resolve_runs(wave_flags), out, err);
        return cmd_verify(resolve_runs(verify_flags), out);
    } catch (const InvalidParameters& e) {
        err << "specbound: invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const UnsupportedAngularMomentum& e) {
        err << "specbound: invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const OutOfDomain& e) {
        err << "specbound: invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const DegreeOverflow& e) {
        err << "specbound: invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const WindowDegenerate& e) {
        err << "specbound: no bound state: " << e.what() << '\n';
        return no_bound_state;
    } catch (const std::exception& e) {
        err << "specbound: verification failed: " << e.what() << '\n';
        return verification_failed;
    }
}

}  // namespace specbound::cli
