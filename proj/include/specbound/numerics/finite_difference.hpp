#pragma once

// Finite-difference oracle for -(hbar^2/2m) u'' + V_eff(x) u = E u with
// Dirichlet walls at both grid ends. Independent of the analytic path:
// it only ever sees V_eff.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "specbound/errors.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/numerics/tridiagonal.hpp"

namespace specbound::numerics {

inline constexpr int min_grid_points = 100;
inline constexpr double richardson_tolerance = 1e-4;

/// Uniform grid including both end points.
struct RadialGrid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 4000;

    [[nodiscard]] double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
    [[nodiscard]] double at(int i) const { return x_min + spacing() * static_cast<double>(i); }

    /// Same interval with the spacing halved exactly.
    [[nodiscard]] RadialGrid refined() const { return {x_min, x_max, 2 * n_points - 1}; }

    void validate() const {
        if (!(x_min < x_max)) throw InvalidParameters("grid requires x_min < x_max");
        if (n_points < min_grid_points) {
            throw InvalidParameters("grid requires n_points >= " + std::to_string(min_grid_points));
        }
    }

    friend bool operator==(const RadialGrid&, const RadialGrid&) = default;
};

enum class Boundary { dirichlet };

struct OracleSpectrum {
    /// Richardson-extrapolated levels from the grid and its h/2 refinement.
    std::vector<double> eigenvalues;
    /// Levels on the requested grid alone.
    std::vector<double> raw_eigenvalues;
    RadialGrid grid;
    Boundary left_boundary = Boundary::dirichlet;
    Boundary right_boundary = Boundary::dirichlet;
    /// x_min, or 0 when the left wall sits at the origin.
    double left_wall_position = 0.0;
    bool effective_potential_includes_centrifugal = false;
    /// max_k |extrapolated_k - fine_k| / |extrapolated_k|: the Richardson
    /// error estimate of the h/2 solve.
    double max_richardson_shift = 0.0;
    bool grid_adequate = true;
};

/// Where the left Dirichlet wall sits. `grid_start` puts it on x_min;
/// `origin` puts it at x = 0 < x_min, making x_min the first unknown with a
/// short first cell (radial problems sampled from a small r > 0).
enum class LeftWall { grid_start, origin };

/// Discretized Hamiltonian in symmetric form S H S^-1 with S = diag(first_scale,
/// 1, 1, ...); first_scale is 1 unless the wall is at the origin.
struct DiscreteHamiltonian {
    SymmetricTridiagonal matrix;
    std::vector<double> x;  // abscissae of the unknowns
    double first_scale = 1.0;
};

/// Diagonal 2t + V_eff(x_i), off-diagonal -t, t = hbar^2 / (2 m h^2), over the
/// unknowns. With an origin wall the first row uses the non-uniform stencil
/// and the similarity transform that restores symmetry.
template <class Veff>
DiscreteHamiltonian discretize(Veff&& v_eff, const RadialGrid& grid, double hbar, double mass,
                               LeftWall wall = LeftWall::grid_start) {
    grid.validate();
    const double h = grid.spacing();
    const double c = hbar * hbar / (2.0 * mass);
    const double t = c / (h * h);
    const bool origin = wall == LeftWall::origin && grid.x_min > 0.0;
    const int first = origin ? 0 : 1;
    const int unknowns = grid.n_points - 1 - first;

    DiscreteHamiltonian out;
    out.x.resize(static_cast<std::size_t>(unknowns));
    out.matrix.diag.resize(static_cast<std::size_t>(unknowns));
    out.matrix.off.assign(static_cast<std::size_t>(unknowns - 1), -t);
    for (int i = 0; i < unknowns; ++i) {
        const double xi = grid.at(i + first);
        out.x[static_cast<std::size_t>(i)] = xi;
        out.matrix.diag[static_cast<std::size_t>(i)] = 2.0 * t + v_eff(xi);
    }
    if (origin) {
        const double e = grid.x_min;
        const double upper = c * 2.0 / (h * (e + h));  // -H(0,1)
        out.matrix.diag[0] = c * 2.0 / (e * h) + v_eff(e);
        out.matrix.off[0] = -std::sqrt(upper * t);
        out.first_scale = std::sqrt(t / upper);
    }
    return out;
}

template <class Veff>
SymmetricTridiagonal build_hamiltonian(Veff&& v_eff, const RadialGrid& grid, double hbar, double mass,
                                       LeftWall wall = LeftWall::grid_start) {
    return discretize(std::forward<Veff>(v_eff), grid, hbar, mass, wall).matrix;
}

/// Lowest `count` eigenvalues below `threshold` (the potential's asymptote;
/// +inf for confining potentials).
template <class Veff>
OracleSpectrum fd_eigenvalues(Veff&& v_eff, const RadialGrid& grid, double hbar, double mass, int count,
                              double threshold = std::numeric_limits<double>::infinity(),
                              bool includes_centrifugal = false, LeftWall wall = LeftWall::grid_start) {
    if (count < 1) throw InvalidParameters("fd_eigenvalues: count must be >= 1");
    const auto coarse_h = build_hamiltonian(v_eff, grid, hbar, mass, wall);
    const auto fine_h = build_hamiltonian(v_eff, grid.refined(), hbar, mass, wall);
    const auto coarse = lowest_eigenvalues(coarse_h, count, threshold);
    const auto fine = lowest_eigenvalues(fine_h, count, threshold);

    OracleSpectrum out;
    out.grid = grid;
    out.left_wall_position = wall == LeftWall::origin ? 0.0 : grid.x_min;
    out.effective_potential_includes_centrifugal = includes_centrifugal;
    const std::size_t n = std::min(coarse.size(), fine.size());
    for (std::size_t k = 0; k < n; ++k) {
        const double extrapolated = (4.0 * fine[k] - coarse[k]) / 3.0;
        if (!(extrapolated < threshold)) break;
        out.eigenvalues.push_back(extrapolated);
        out.raw_eigenvalues.push_back(coarse[k]);
        const double scale = std::max(std::abs(extrapolated), std::numeric_limits<double>::min());
        out.max_richardson_shift = std::max(out.max_richardson_shift, std::abs(extrapolated - fine[k]) / scale);
    }
    out.grid_adequate = out.max_richardson_shift <= richardson_tolerance;
    return out;
}

inline void require_adequate(const OracleSpectrum& s) {
    if (!s.grid_adequate) {
        throw GridTooCoarse("Richardson extrapolation shifts a level by " + std::to_string(s.max_richardson_shift) +
                            " relative (limit " + std::to_string(richardson_tolerance) + ")");
    }
}

/// Eigenvector on the full grid (zero on the walls) by inverse iteration,
/// normalised so that Simpson(u^2) = 1.
template <class Veff>
std::vector<double> fd_eigenvector(Veff&& v_eff, const RadialGrid& grid, double hbar, double mass, double eigenvalue,
                                   LeftWall wall = LeftWall::grid_start) {
    const auto dh = discretize(v_eff, grid, hbar, mass, wall);
    auto y = inverse_iteration(dh.matrix, eigenvalue);
    y[0] /= dh.first_scale;
    const bool origin = dh.x.size() + 1 == static_cast<std::size_t>(grid.n_points);
    std::vector<double> u(static_cast<std::size_t>(grid.n_points), 0.0);
    std::copy(y.begin(), y.end(), u.begin() + (origin ? 0 : 1));
    std::vector<double> sq(u.size());
    std::transform(u.begin(), u.end(), sq.begin(), [](double v) { return v * v; });
    const double norm = std::sqrt(simpson_integrate(sq, grid.spacing()));
    for (double& v : u) v /= norm;
    return u;
}

}  // namespace specbound::numerics
