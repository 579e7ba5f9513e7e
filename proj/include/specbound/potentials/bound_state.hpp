#pragma once

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/numerics/finite_difference.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/parametric.hpp"
#include "specbound/potentials/catalog.hpp"
#include "specbound/potentials/families.hpp"
#include "specbound/special_functions.hpp"

namespace specbound {

using BranchConstants = std::variant<JacobiBranchConstants, LaguerreBranchConstants>;

struct BoundState {
    PotentialSpec potential;
    UnitsConfig units;
    int n = 0;
    int l = 0;
    double energy = 0.0;
    BranchConstants branch_constants;
    /// Multiplies the bare analytic form so that the state has unit norm.
    double norm_constant = 1.0;
    /// Parametric coefficients at `energy`.
    ParametricCoefficients coefficients;
    /// Termination residual at `energy`.
    double residual = 0.0;

    [[nodiscard]] Branch branch() const {
        return std::holds_alternative<JacobiBranchConstants>(branch_constants) ? Branch::jacobi : Branch::laguerre;
    }
    /// (p, q) in the ansatz, whichever branch.
    [[nodiscard]] double p() const {
        if (const auto* j = std::get_if<JacobiBranchConstants>(&branch_constants)) return j->p0;
        return std::get<LaguerreBranchConstants>(branch_constants).p10;
    }
    [[nodiscard]] double q() const {
        if (const auto* j = std::get_if<JacobiBranchConstants>(&branch_constants)) return j->q0;
        return std::get<LaguerreBranchConstants>(branch_constants).q10;
    }
};

namespace detail {

// s^q with 0^0 = 1, computed as exp(q ln s).
inline double q_log_s(double q, double log_s) { return q == 0.0 ? 0.0 : q * log_s; }

inline double bare_wavefunction(const BoundState& st, const CoordinateMap& map, double x) {
    const double log_s = map.log_s(x);
    const double s = map.s_of_x(x);
    const auto& pc = st.coefficients;
    if (const auto* j = std::get_if<JacobiBranchConstants>(&st.branch_constants)) {
        const double log_1c3s = map.log_one_plus_c3s(x);
        const double envelope = std::exp(q_log_s(j->q0, log_s) - j->p0 * log_1c3s);
        return envelope * jacobi_p(st.n, j->alpha, j->beta, 1.0 + 2.0 * pc.c3 * s);
    }
    const auto& lc = std::get<LaguerreBranchConstants>(st.branch_constants);
    const double envelope = std::exp(q_log_s(lc.q10, log_s) - lc.p10 * s);
    return envelope * laguerre_l(st.n, lc.k, (2.0 * lc.p10 - pc.c2) * s);
}

inline void check_domain(const CoordinateMap& map, double x) {
    if (!std::isfinite(x)) throw OutOfDomain("wavefunction evaluated at a non-finite coordinate");
    if (map.radial && x < 0.0) throw OutOfDomain("radial wavefunction evaluated at r < 0");
}

}  // namespace detail

/// psi(x): R(r) for radial families (weight r^2), u(x) in one dimension.
inline double wavefunction(const BoundState& state, double x) {
    const auto map = coordinate_map(state.potential);
    detail::check_domain(map, x);
    if (map.radial && x == 0.0) {
        return state.q() == 0.0 ? state.norm_constant * detail::bare_wavefunction(state, map, 1e-300) : 0.0;
    }
    return state.norm_constant * detail::bare_wavefunction(state, map, x);
}

/// psi at every point of `grid`.
inline std::vector<double> sample_wavefunction(const BoundState& state, const numerics::RadialGrid& grid) {
    grid.validate();
    std::vector<double> out(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) out[static_cast<std::size_t>(i)] = wavefunction(state, grid.at(i));
    return out;
}

/// psi^2 times the measure factor at every grid point.
inline std::vector<double> weighted_density(const BoundState& state, const numerics::RadialGrid& grid) {
    const auto map = coordinate_map(state.potential);
    auto psi = sample_wavefunction(state, grid);
    for (int i = 0; i < grid.n_points; ++i) {
        auto& v = psi[static_cast<std::size_t>(i)];
        v = v * v * map.measure_factor(grid.at(i));
    }
    return psi;
}

/// Simpson value of psi_a psi_b (measure) over `grid`.
inline double overlap(const BoundState& a, const BoundState& b, const numerics::RadialGrid& grid) {
    const auto map = coordinate_map(a.potential);
    const auto pa = sample_wavefunction(a, grid);
    const auto pb = sample_wavefunction(b, grid);
    std::vector<double> prod(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        prod[i] = pa[i] * pb[i] * map.measure_factor(grid.at(static_cast<int>(i)));
    }
    return numerics::simpson_integrate(prod, grid.spacing());
}

namespace detail {

inline BoundState assemble_state(const PotentialSpec& spec, int l, const UnitsConfig& units,
                                 const ParametricModel& model, int n, double energy) {
    BoundState st;
    st.potential = spec;
    st.units = units;
    st.n = n;
    st.l = l;
    st.energy = energy;
    st.coefficients = model.form.coeff_at(energy);
    if (model.form.branch == Branch::jacobi) {
        st.branch_constants = solve_jacobi_constants(st.coefficients, model.form.roots);
    } else {
        st.branch_constants = solve_laguerre_constants(st.coefficients);
    }
    st.residual = quantization_residual(st.coefficients, n, model.form.roots);
    return st;
}

inline void normalize(BoundState& st, const numerics::RadialGrid& grid) {
    st.norm_constant = 1.0;
    const double norm2 = numerics::simpson_integrate(weighted_density(st, grid), grid.spacing());
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw ConsistencyViolation("state has no finite positive norm");
    st.norm_constant = 1.0 / std::sqrt(norm2);
}

inline int analytic_nodes(const BoundState& st, const numerics::RadialGrid& grid) {
    return numerics::count_nodes(sample_wavefunction(st, grid));
}

}  // namespace detail

/// Bound states n = 0..n_max that exist, ascending in energy, each normalized
/// on `grid`. Without a grid each state uses covering_grid at its own energy.
inline std::vector<BoundState> spectrum(const PotentialSpec& spec, int l, const UnitsConfig& units, int n_max,
                                        std::optional<numerics::RadialGrid> grid = std::nullopt) {
    if (n_max < 0) throw InvalidParameters("n_max must be >= 0");
    const auto model = to_parametric(spec, l, units);
    if (grid) grid->validate();
    const auto grid_for = [&](double energy) { return grid ? *grid : covering_grid(spec, l, units, energy); };

    std::vector<BoundState> out;
    if (!(model.form.window.lo < model.form.window.hi)) return out;
    std::optional<double> previous;
    for (int n = 0; n <= n_max; ++n) {
        std::vector<double> candidates;
        for (double e : energy_roots(model.form, n)) {
            if (!previous || e > *previous) candidates.push_back(e);
        }
        if (candidates.empty()) break;

        std::optional<BoundState> chosen;
        if (candidates.size() == 1) {
            chosen = detail::assemble_state(spec, l, units, model, n, candidates.front());
        } else {
            // Several termination roots for the same n: the node count decides.
            for (double e : candidates) {
                auto st = detail::assemble_state(spec, l, units, model, n, e);
                if (detail::analytic_nodes(st, grid_for(e)) == n) {
                    chosen = std::move(st);
                    break;
                }
            }
            if (!chosen) chosen = detail::assemble_state(spec, l, units, model, n, candidates.front());
        }
        if (const auto* j = std::get_if<JacobiBranchConstants>(&chosen->branch_constants)) consistency_check(*j);
        detail::normalize(*chosen, grid_for(chosen->energy));
        previous = chosen->energy;
        out.push_back(std::move(*chosen));
    }
    return out;
}

}  // namespace specbound
