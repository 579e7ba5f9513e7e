#pragma once

// The parametric equation
//
//   psi'' + (c1 + c2 s) / (s (1 + c3 s)) psi'
//         + (-L1 s^2 + L2 s - L3) / (s (1 + c3 s))^2 psi = 0
//
// and its two polynomial solution branches. With c3 != 0 the ansatz
// psi = (1 + c3 s)^(-p) s^q y(1 + 2 c3 s) reduces y to a Jacobi polynomial;
// with c3 == 0 the ansatz psi = exp(-p s) s^q y((2p - c2) s) reduces y to an
// associated Laguerre polynomial. Energy enters only through the L_i, and the
// energy levels are the roots in E of the series-termination conditions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specbound/errors.hpp"

namespace specbound {

inline constexpr double algebraic_tolerance = 1e-12;
inline constexpr double residual_tolerance = 1e-10;
inline constexpr double consistency_hard_limit = 1e-8;
inline constexpr int energy_scan_points = 2000;

enum class Branch { laguerre, jacobi };

inline std::string_view to_string(Branch b) { return b == Branch::jacobi ? "jacobi" : "laguerre"; }

struct ParametricCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;

    /// Laguerre iff c3 is exactly zero.
    [[nodiscard]] Branch branch() const { return c3 == 0.0 ? Branch::laguerre : Branch::jacobi; }

    friend bool operator==(const ParametricCoefficients&, const ParametricCoefficients&) = default;
};

enum class RootSign { plus, minus };

/// Which root of the q and p quadratics to take. The q root is the + sign in
/// every catalog case; the p root is configured per potential.
struct RootChoice {
    RootSign q = RootSign::plus;
    RootSign p = RootSign::plus;

    friend bool operator==(const RootChoice&, const RootChoice&) = default;
};

struct JacobiBranchConstants {
    double q0 = 0.0;
    double p0 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double D = 0.0;
    double H = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
};

struct LaguerreBranchConstants {
    double q10 = 0.0;
    double p10 = 0.0;
    double k = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma3 = 0.0;
};

/// Open interval of admissible bound-state energies. For confining
/// potentials `hi` is only a starting guess that the root finder may grow.
struct EnergyWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool confining = false;
};

/// How a potential embeds the trial energy in the parametric coefficients.
/// c1, c2, c3 must not depend on E.
struct EnergyDependentForm {
    Branch branch = Branch::laguerre;
    std::function<ParametricCoefficients(double)> coeff_at;
    EnergyWindow window;
    RootChoice roots;
};

namespace detail {

// Roots of x^2 - 2 h x - c = 0, i.e. h +/- sqrt(h^2 + c), computed without
// cancellation (the smaller root comes from the product of roots, -c).
inline double quadratic_root(double h, double c, RootSign sign, const char* what) {
    const double disc = h * h + c;
    if (disc < 0.0) {
        throw NegativeDiscriminant(std::string(what) + ": discriminant " + std::to_string(disc) + " < 0");
    }
    const double sq = std::sqrt(disc);
    const double big = h >= 0.0 ? h + sq : h - sq;
    const double small = big == 0.0 ? 0.0 : -c / big;
    const bool want_plus = sign == RootSign::plus;
    if (h >= 0.0) return want_plus ? big : small;
    return want_plus ? small : big;
}

}  // namespace detail

/// q0, p0 from the r1+r2+r3 = 0 and r2 = 0 conditions, then alpha, beta
/// and the coefficients r1, r2, r3 of R(z) = r1 z^2 + r2 z + r3.
inline JacobiBranchConstants solve_jacobi_constants(const ParametricCoefficients& pc, RootChoice choice) {
    if (pc.branch() != Branch::jacobi) throw BranchMismatch("solve_jacobi_constants requires c3 != 0");
    const double c1 = pc.c1;
    const double ratio = pc.c2 / pc.c3;
    const double l1c = pc.lambda1 / (pc.c3 * pc.c3);
    const double l2c = pc.lambda2 / pc.c3;

    JacobiBranchConstants jc;
    jc.q0 = detail::quadratic_root((1.0 - c1) / 2.0, pc.lambda3, choice.q, "q quadratic");
    jc.D = ratio - c1 - 1.0;
    jc.H = l1c + l2c + pc.lambda3;
    jc.p0 = detail::quadratic_root(jc.D / 2.0, jc.H, choice.p, "p quadratic");

    const double q = jc.q0;
    const double p = jc.p0;
    jc.alpha = 2.0 * q + c1 - 1.0;
    jc.beta = -2.0 * p - c1 + ratio - 1.0;
    jc.r1 = q * (q - 1.0) - 2.0 * p * q + p * (p + 1.0) + ratio * (q - p) - l1c;
    jc.r2 = 2.0 * q * (q - 1.0) - 2.0 * p * (p + 1.0) + 2.0 * c1 * (q - p) + 2.0 * ratio * p + 2.0 * l1c + 2.0 * l2c;
    jc.r3 = q * (q - 1.0) + 2.0 * p * q + p * (p + 1.0) + 2.0 * c1 * (q + p) - ratio * (q + p) - l1c - 2.0 * l2c -
            4.0 * pc.lambda3;
    return jc;
}

/// q10 and p10 with the + sign (gamma3 = 0, gamma1 = 0), k and gamma_i.
inline LaguerreBranchConstants solve_laguerre_constants(const ParametricCoefficients& pc) {
    if (pc.branch() != Branch::laguerre) throw BranchMismatch("solve_laguerre_constants requires c3 == 0");
    LaguerreBranchConstants lc;
    const double q = detail::quadratic_root((1.0 - pc.c1) / 2.0, pc.lambda3, RootSign::plus, "q quadratic");
    const double p = detail::quadratic_root(pc.c2 / 2.0, pc.lambda1, RootSign::plus, "p quadratic");
    const double scale = pc.c2 - 2.0 * p;
    lc.q10 = q;
    lc.p10 = p;
    lc.k = pc.c1 + 2.0 * q - 1.0;
    if (scale == 0.0) {
        // Threshold: the Laguerre argument (2p - c2) s vanishes and gamma1,
        // gamma2 are undefined.
        lc.gamma1 = lc.gamma2 = std::numeric_limits<double>::quiet_NaN();
    } else {
        lc.gamma1 = (p * p - pc.c2 * p - pc.lambda1) / (scale * scale);
        lc.gamma2 = (2.0 * q * p - pc.c2 * q + pc.c1 * p - pc.lambda2) / scale;
    }
    lc.gamma3 = q * (q - 1.0) + pc.c1 * q - pc.lambda3;
    return lc;
}

/// Termination residual at fixed coefficients: r3 - n(n+alpha+beta+1) on the
/// Jacobi branch, gamma2 - n on the Laguerre branch.
inline double quantization_residual(const ParametricCoefficients& pc, int n, RootChoice choice) {
    const double nn = static_cast<double>(n);
    if (pc.branch() == Branch::jacobi) {
        const auto jc = solve_jacobi_constants(pc, choice);
        return jc.r3 - nn * (nn + jc.alpha + jc.beta + 1.0);
    }
    return solve_laguerre_constants(pc).gamma2 - nn;
}

inline bool inside_window(const EnergyWindow& w, double energy) {
    return energy > w.lo && (w.confining || energy < w.hi);
}

inline double quantization_residual(const EnergyDependentForm& form, int n, double energy, RootChoice choice) {
    if (n < 0) throw InvalidParameters("quantum number n must be >= 0");
    if (!inside_window(form.window, energy)) {
        throw OutOfDomain("trial energy " + std::to_string(energy) + " outside the admissible window");
    }
    return quantization_residual(form.coeff_at(energy), n, choice);
}

inline double quantization_residual(const EnergyDependentForm& form, int n, double energy) {
    return quantization_residual(form, n, energy, form.roots);
}

/// The consolidated (q0 - p0) quadratic written out as right side minus left
/// side, with the middle coefficient (c2/c3 + 2n - 1). Algebraically equal to
/// the Jacobi residual whenever q0 and p0 solve their quadratics.
inline double printed_form_residual(const ParametricCoefficients& pc, int n, RootChoice choice) {
    const auto jc = solve_jacobi_constants(pc, choice);
    const double nn = static_cast<double>(n);
    const double ratio = pc.c2 / pc.c3;
    const double x = jc.q0 - jc.p0;
    const double lhs = x * x + (ratio + 2.0 * nn - 1.0) * x + nn * (nn + ratio - 1.0);
    return pc.lambda1 / (pc.c3 * pc.c3) - lhs;
}

struct ConsistencyReport {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double r2_abs = 0.0;
    double r1_plus_r3_abs = 0.0;

    [[nodiscard]] bool within(double tol = residual_tolerance) const { return r2_abs < tol && r1_plus_r3_abs < tol; }
};

/// r2 = 0 and r1 = -r3 must hold for the Jacobi reduction. Throws
/// ConsistencyViolation beyond 1e-8 (wrong root or mis-mapped potential).
inline ConsistencyReport consistency_check(const JacobiBranchConstants& jc) {
    ConsistencyReport rep{jc.r1, jc.r2, jc.r3, std::abs(jc.r2), std::abs(jc.r1 + jc.r3)};
    if (rep.r2_abs > consistency_hard_limit || rep.r1_plus_r3_abs > consistency_hard_limit) {
        throw ConsistencyViolation("|r2| = " + std::to_string(rep.r2_abs) +
                                   ", |r1 + r3| = " + std::to_string(rep.r1_plus_r3_abs));
    }
    return rep;
}

namespace detail {

using Residual = std::function<std::optional<double>(double)>;

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Bisection to floating-point adjacency; returns the end with smaller |f|.
inline std::optional<double> bisect(const Residual& f, double a, double fa, double b, double fb) {
    for (int it = 0; it < 200; ++it) {
        const double mid = a + 0.5 * (b - a);
        if (mid <= a || mid >= b) break;
        const auto fm = f(mid);
        if (!fm) return std::nullopt;
        if (*fm == 0.0) return mid;
        if (sign_of(*fm) == sign_of(fa)) {
            a = mid;
            fa = *fm;
        } else {
            b = mid;
            fb = *fm;
        }
    }
    const double root = std::abs(fa) <= std::abs(fb) ? a : b;
    const double value = std::min(std::abs(fa), std::abs(fb));
    if (value > consistency_hard_limit) return std::nullopt;  // a pole, not a root
    return root;
}

struct Sample {
    double e;
    std::optional<double> f;
};

inline void collect_roots(const Residual& f, const std::vector<Sample>& samples, std::vector<double>& roots) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].f && *samples[i].f == 0.0) {
            roots.push_back(samples[i].e);
            continue;
        }
        if (i + 1 == samples.size()) break;
        const auto& a = samples[i];
        const auto& b = samples[i + 1];
        if (!a.f || !b.f || *b.f == 0.0) continue;
        if (sign_of(*a.f) * sign_of(*b.f) < 0) {
            if (auto r = bisect(f, a.e, *a.f, b.e, *b.f)) roots.push_back(*r);
        }
    }
}

inline std::vector<double> scan_window(const Residual& f, double lo, double hi) {
    std::vector<Sample> grid;
    grid.reserve(energy_scan_points);
    const double step = (hi - lo) / static_cast<double>(energy_scan_points + 1);
    for (int i = 1; i <= energy_scan_points; ++i) {
        const double e = lo + step * static_cast<double>(i);
        grid.push_back({e, f(e)});
    }
    std::vector<double> roots;
    collect_roots(f, grid, roots);
    if (!roots.empty()) return roots;

    // Levels can crowd against an open end (Rydberg series at threshold):
    // refine the two end cells geometrically.
    std::vector<Sample> upper{grid.back()};
    std::vector<Sample> lower{grid.front()};
    for (int k = 1; k <= 60; ++k) {
        const double offset = step * std::ldexp(1.0, -k);
        const double eu = hi - offset;
        const double el = lo + offset;
        if (eu > upper.back().e && eu < hi) upper.push_back({eu, f(eu)});
        if (el < lower.back().e && el > lo) lower.push_back({el, f(el)});
    }
    std::reverse(lower.begin(), lower.end());
    collect_roots(f, lower, roots);
    collect_roots(f, upper, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

/// All roots in E of the n-th termination residual inside the window, in
/// ascending order.
inline std::vector<double> energy_roots(const EnergyDependentForm& form, int n, RootChoice choice) {
    if (n < 0) throw InvalidParameters("quantum number n must be >= 0");
    const EnergyWindow& w = form.window;
    if (!(w.lo < w.hi)) throw WindowDegenerate("energy window is empty");

    const detail::Residual f = [&](double e) -> std::optional<double> {
        try {
            const double r = quantization_residual(form.coeff_at(e), n, choice);
            if (!std::isfinite(r)) return std::nullopt;
            return r;
        } catch (const NegativeDiscriminant&) {
            return std::nullopt;
        }
    };

    double hi = w.hi;
    const int expansions = w.confining ? 60 : 0;
    for (int attempt = 0; attempt <= expansions; ++attempt) {
        auto roots = detail::scan_window(f, w.lo, hi);
        if (!roots.empty()) return roots;
        hi = w.lo + 2.0 * (hi - w.lo);
    }
    return {};
}

inline std::vector<double> energy_roots(const EnergyDependentForm& form, int n) {
    return energy_roots(form, n, form.roots);
}

/// Energy of level n, or nullopt when the spectrum is exhausted. With
/// several roots, the lowest one strictly above `above` is returned.
inline std::optional<double> solve_energy(const EnergyDependentForm& form, int n, RootChoice choice,
                                          std::optional<double> above = std::nullopt) {
    for (double e : energy_roots(form, n, choice)) {
        if (!above || e > *above) return e;
    }
    return std::nullopt;
}

inline std::optional<double> solve_energy(const EnergyDependentForm& form, int n) {
    return solve_energy(form, n, form.roots);
}

}  // namespace specbound
