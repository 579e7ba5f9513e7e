#pragma once

// Analytic levels against the finite-difference oracle and the closed forms.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "specbound/numerics/finite_difference.hpp"
#include "specbound/potentials/bound_state.hpp"
#include "specbound/potentials/catalog.hpp"
#include "specbound/potentials/families.hpp"

namespace specbound {

/// Oracle levels of (spec, l) below the asymptote. Radial problems are
/// discretized for u = r R with the wall at r = 0, so the levels compare
/// directly with the analytic spectrum.
inline numerics::OracleSpectrum fd_eigenvalues(const PotentialSpec& spec, int l, const UnitsConfig& units,
                                               const numerics::RadialGrid& grid, int count) {
    validate(spec);
    units.validate();
    detail::check_angular_momentum(spec, l);
    const bool radial = is_radial(spec);
    if (radial && grid.x_min < 0.0) throw InvalidParameters("radial oracle grid requires x_min >= 0");
    const auto v = [&](double x) { return effective_potential(spec, l, units, x); };
    return numerics::fd_eigenvalues(v, grid, units.hbar, units.mass, count, asymptotes(spec).threshold(),
                                    radial && l > 0, radial ? numerics::LeftWall::origin : numerics::LeftWall::grid_start);
}

struct LevelComparison {
    int n = 0;
    double analytic = 0.0;
    std::optional<double> closed_form;
    std::optional<double> oracle;
    std::optional<double> rel_diff_closed;
    std::optional<double> rel_diff_oracle;
    bool pass = false;
};

struct VerificationReport {
    std::vector<LevelComparison> levels;
    double rel_tol = 1e-5;
    double closed_form_tol = 1e-10;
    double worst_rel_diff_oracle = 0.0;
    double worst_rel_diff_closed = 0.0;
    int analytic_count = 0;
    int oracle_count = 0;
    bool count_discrepancy = false;
    bool grid_adequate = true;
    double max_richardson_shift = 0.0;
    bool pass = false;
};

inline double relative_difference(double reference, double value) {
    const double scale = std::abs(reference);
    return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value - reference);
}

/// Pair levels by index. A count mismatch is only a discrepancy when the
/// analytic list is the complete bound spectrum (`analytic_complete`) or the
/// oracle has fewer levels than the analytic side.
inline VerificationReport compare_spectra(const std::vector<BoundState>& analytic,
                                          const numerics::OracleSpectrum& oracle, double rel_tol,
                                          bool analytic_complete = false) {
    VerificationReport rep;
    rep.rel_tol = rel_tol;
    rep.analytic_count = static_cast<int>(analytic.size());
    rep.oracle_count = static_cast<int>(oracle.eigenvalues.size());
    rep.grid_adequate = oracle.grid_adequate;
    rep.max_richardson_shift = oracle.max_richardson_shift;
    rep.count_discrepancy = rep.oracle_count < rep.analytic_count ||
                            (analytic_complete && rep.oracle_count != rep.analytic_count) ||
                            (analytic.empty() && rep.oracle_count > 0);

    bool all_pass = true;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const auto& st = analytic[i];
        LevelComparison lc;
        lc.n = st.n;
        lc.analytic = st.energy;
        lc.closed_form = closed_form_energy(st.potential, st.l, st.units, st.n);
        if (lc.closed_form) {
            lc.rel_diff_closed = relative_difference(st.energy, *lc.closed_form);
            rep.worst_rel_diff_closed = std::max(rep.worst_rel_diff_closed, *lc.rel_diff_closed);
        }
        if (i < oracle.eigenvalues.size()) {
            lc.oracle = oracle.eigenvalues[i];
            lc.rel_diff_oracle = relative_difference(st.energy, *lc.oracle);
            rep.worst_rel_diff_oracle = std::max(rep.worst_rel_diff_oracle, *lc.rel_diff_oracle);
        }
        lc.pass = lc.rel_diff_oracle && *lc.rel_diff_oracle < rel_tol &&
                  (!lc.closed_form || *lc.rel_diff_closed < rep.closed_form_tol);
        all_pass = all_pass && lc.pass;
        rep.levels.push_back(lc);
    }
    rep.pass = !analytic.empty() && all_pass && !rep.count_discrepancy && rep.grid_adequate;
    return rep;
}

/// spectrum + closed forms + oracle. With an explicit `grid` everything runs
/// on it. Otherwise the oracle starts on the default grid and is re-solved on
/// covering_grid at its own highest level when that level's tail is cut off.
inline VerificationReport verify(const PotentialSpec& spec, int l, const UnitsConfig& units, int n_max,
                                 double rel_tol = 1e-5, std::optional<numerics::RadialGrid> grid = std::nullopt) {
    const auto states = spectrum(spec, l, units, n_max, grid);
    const int count = std::max(1, static_cast<int>(states.size()));
    if (grid) return compare_spectra(states, fd_eigenvalues(spec, l, units, *grid, count), rel_tol);
    auto oracle = fd_eigenvalues(spec, l, units, default_grid(spec, units), count);
    if (!oracle.eigenvalues.empty()) {
        const auto wide = covering_grid(spec, l, units, oracle.eigenvalues.back());
        if (!(wide == oracle.grid)) oracle = fd_eigenvalues(spec, l, units, wide, count);
    }
    return compare_spectra(states, oracle, rel_tol);
}

}  // namespace specbound
