#pragma once

// Per-family reduction to the parametric equation: coordinate substitution,
// energy-dependent coefficients, admissible energy window and the closed-form
// levels rederived from the termination conditions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "specbound/errors.hpp"
#include "specbound/numerics/finite_difference.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/parametric.hpp"
#include "specbound/potentials/families.hpp"

namespace specbound {

struct Interval {
    double lo;
    double hi;
};

/// Physical coordinate x (or r) to the parametric variable s. Logarithms are
/// provided directly so wavefunctions stay finite far into the tails.
struct CoordinateMap {
    std::function<double(double)> s_of_x;
    std::function<double(double)> log_s;
    /// ln(1 + c3 s(x)); empty on the Laguerre branch.
    std::function<double(double)> log_one_plus_c3s;
    Interval x_domain{};
    Interval s_domain{};
    bool radial = false;

    /// Weight in norm integrals: r^2 for radial functions R(r), 1 in 1-D.
    [[nodiscard]] double measure_factor(double x) const { return radial ? x * x : 1.0; }
};

struct ParametricModel {
    EnergyDependentForm form;
    CoordinateMap map;
};

namespace detail {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline void check_angular_momentum(const PotentialSpec& spec, int l) {
    if (l < 0) throw InvalidParameters("l must be >= 0");
    if (l == 0) return;
    if (!is_radial(spec)) {
        throw UnsupportedAngularMomentum(std::string(family_name(spec)) + " is one-dimensional; l must be 0");
    }
    if (std::holds_alternative<NoncentralRadial>(spec)) {
        throw UnsupportedAngularMomentum("NoncentralRadial carries its angular part in lambda; l must be 0");
    }
}

inline double two_m_over_hbar2(const UnitsConfig& u) { return 2.0 * u.mass / (u.hbar * u.hbar); }

inline CoordinateMap radial_identity_map() {
    CoordinateMap m;
    m.s_of_x = [](double r) { return r; };
    m.log_s = [](double r) { return std::log(r); };
    m.x_domain = {0.0, inf};
    m.s_domain = {0.0, inf};
    m.radial = true;
    return m;
}

// s = e^{-2ax} / (1 + eta e^{-2ax}), so 1 - eta s = 1 / (1 + eta e^{-2ax}).
inline CoordinateMap deformed_exponential_map(double a, double eta) {
    CoordinateMap m;
    const double log_eta = std::log(eta);
    m.s_of_x = [=](double x) {
        const double t = log_eta - 2.0 * a * x;
        return std::exp(t - softplus(t) - log_eta);
    };
    m.log_s = [=](double x) {
        const double t = log_eta - 2.0 * a * x;
        return t - softplus(t) - log_eta;
    };
    m.log_one_plus_c3s = [=](double x) { return -softplus(log_eta - 2.0 * a * x); };
    m.x_domain = {-inf, inf};
    m.s_domain = {0.0, 1.0 / eta};
    return m;
}

}  // namespace detail

/// Coordinate substitution for a family (independent of l and energy).
inline CoordinateMap coordinate_map(const PotentialSpec& spec) {
    return std::visit(
        [](const auto& f) -> CoordinateMap {
            using F = std::decay_t<decltype(f)>;
            using detail::inf;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) {
                CoordinateMap m;
                const double half_log_v1 = 0.5 * std::log(f.V1);
                const double a = f.a;
                m.s_of_x = [=](double x) { return std::exp(half_log_v1 - a * x); };
                m.log_s = [=](double x) { return half_log_v1 - a * x; };
                m.x_domain = {-inf, inf};
                m.s_domain = {0.0, inf};
                return m;
            } else if constexpr (std::is_same_v<F, Pseudoharmonic>) {
                CoordinateMap m = detail::radial_identity_map();
                m.s_of_x = [](double r) { return r * r; };
                m.log_s = [](double r) { return 2.0 * std::log(r); };
                return m;
            } else if constexpr (std::is_same_v<F, DeformedRosenMorse> || std::is_same_v<F, PoschlTeller>) {
                return detail::deformed_exponential_map(f.a, f.eta);
            } else if constexpr (std::is_same_v<F, WoodsSaxon>) {
                CoordinateMap m;
                const double a = f.a;
                m.s_of_x = [=](double x) { return std::exp(-detail::softplus(a * x)); };
                m.log_s = [=](double x) { return -detail::softplus(a * x); };
                m.log_one_plus_c3s = [=](double x) { return a * x - detail::softplus(a * x); };
                m.x_domain = {-inf, inf};
                m.s_domain = {0.0, 1.0};
                return m;
            } else {
                return detail::radial_identity_map();
            }
        },
        spec);
}

/// V(x) plus the centrifugal term hbar^2 l(l+1)/(2 m r^2) for radial
/// families; for NoncentralRadial the lambda/r^2 term takes that role.
inline double effective_potential(const PotentialSpec& spec, int l, const UnitsConfig& units, double x) {
    const double v = potential_value(spec, x);
    if (const auto* nc = std::get_if<NoncentralRadial>(&spec)) return v + nc->lambda / (x * x);
    if (!is_radial(spec)) return v;
    const double ll = static_cast<double>(l) * static_cast<double>(l + 1);
    return v + units.hbar * units.hbar * ll / (2.0 * units.mass * x * x);
}

namespace detail {

// Characteristic length used for radial search brackets and default grids.
inline double radial_length_scale(const PotentialSpec& spec, const UnitsConfig& u) {
    return std::visit(
        [&u](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Mie>) return f.a;
            else if constexpr (std::is_same_v<F, KratzerFues>) return f.re;
            else if constexpr (std::is_same_v<F, Coulomb>) return u.hbar * u.hbar / (u.mass * f.e2);
            else if constexpr (std::is_same_v<F, Pseudoharmonic>) return f.r0;
            else if constexpr (std::is_same_v<F, NoncentralRadial>)
                return f.alpha != 0.0 ? u.hbar * u.hbar / (u.mass * std::abs(f.alpha)) : 1.0;
            else return 1.0;
        },
        spec);
}

// Centre and half-width of the bracket used to locate the minimum of a 1-D
// potential.
inline std::pair<double, double> one_dimensional_bracket(const PotentialSpec& spec) {
    return std::visit(
        [](const auto& f) -> std::pair<double, double> {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) return {std::log(2.0 * f.V1 / f.V2) / f.a, 40.0 / f.a};
            else if constexpr (std::is_same_v<F, DeformedRosenMorse> || std::is_same_v<F, PoschlTeller>)
                return {std::log(f.eta) / (2.0 * f.a), 40.0 / f.a};
            else if constexpr (std::is_same_v<F, WoodsSaxon>) return {0.0, 40.0 / f.a};
            else return {0.0, 40.0};
        },
        spec);
}

}  // namespace detail

/// Location and value of the minimum of V (1-D), found by golden section.
inline numerics::Minimum potential_minimum(const PotentialSpec& spec) {
    if (is_radial(spec)) throw InvalidParameters("potential_minimum applies to one-dimensional families");
    const auto [centre, half] = detail::one_dimensional_bracket(spec);
    return numerics::golden_section_minimize([&](double x) { return potential_value(spec, x); }, centre - half,
                                             centre + half, 1e-14);
}

/// Strict lower bound on radial energies: min over r of
/// V(r) + hbar^2 (l(l+1) + 1/4) / (2 m r^2). The extra 1/4 is the Hardy
/// bound on the kinetic energy, which keeps the bound finite for -1/r.
inline numerics::Minimum radial_energy_floor(const PotentialSpec& spec, int l, const UnitsConfig& units) {
    const double length = detail::radial_length_scale(spec, units);
    const double hardy = units.hbar * units.hbar * 0.25 / (2.0 * units.mass);
    const auto f = [&](double log_r) {
        const double r = std::exp(log_r);
        return effective_potential(spec, l, units, r) + hardy / (r * r);
    };
    auto m = numerics::golden_section_minimize(f, std::log(1e-6 * length), std::log(1e4 * length), 1e-14);
    m.x = std::exp(m.x);
    return m;
}

/// Admissible bound-state energies for (spec, l).
inline EnergyWindow energy_window(const PotentialSpec& spec, int l, const UnitsConfig& units) {
    EnergyWindow w;
    w.hi = asymptotes(spec).threshold();
    w.lo = is_radial(spec) ? radial_energy_floor(spec, l, units).value : potential_minimum(spec).value;
    if (const auto* ph = std::get_if<Pseudoharmonic>(&spec)) {
        w.confining = true;
        w.hi = w.lo + 8.0 * units.hbar * std::sqrt(2.0 * ph->V0 / units.mass) / ph->r0;
    }
    return w;
}

/// Reduce (spec, l, units) to the parametric equation.
inline ParametricModel to_parametric(const PotentialSpec& spec, int l, const UnitsConfig& units) {
    validate(spec);
    units.validate();
    detail::check_angular_momentum(spec, l);
    const double k2 = detail::two_m_over_hbar2(units);  // 2m / hbar^2
    const double ll = static_cast<double>(l) * static_cast<double>(l + 1);

    if (const auto* nc = std::get_if<NoncentralRadial>(&spec)) {
        if (1.0 + 4.0 * k2 * nc->lambda < 0.0) {
            throw InvalidParameters("NoncentralRadial: lambda below -hbar^2/(8m) (fall to the centre)");
        }
    }

    ParametricModel model;
    model.map = coordinate_map(spec);
    model.form.window = energy_window(spec, l, units);
    model.form.roots = RootChoice{RootSign::plus, RootSign::minus};
    model.form.coeff_at = std::visit(
        [&](const auto& f) -> std::function<ParametricCoefficients(double)> {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) {
                const double a2 = f.a * f.a;
                const ParametricCoefficients base{1.0, 0.0, 0.0, k2 / a2, k2 * f.V2 / (a2 * std::sqrt(f.V1)), 0.0};
                return [=](double e) {
                    auto pc = base;
                    pc.lambda3 = -k2 * e / a2;
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, Mie>) {
                const ParametricCoefficients base{2.0, 0.0, 0.0, 0.0, k2 * f.a * f.V0, k2 * f.a * f.a * f.V0 / 2.0 + ll};
                return [=](double e) {
                    auto pc = base;
                    pc.lambda1 = -k2 * e;
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, KratzerFues>) {
                const ParametricCoefficients base{2.0, 0.0, 0.0, 0.0, 2.0 * k2 * f.De * f.re,
                                                  k2 * f.De * f.re * f.re + ll};
                const double de = f.De;
                return [=](double e) {
                    auto pc = base;
                    pc.lambda1 = k2 * (de - e);
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, Coulomb>) {
                const ParametricCoefficients base{2.0, 0.0, 0.0, 0.0, k2 * f.e2, ll};
                return [=](double e) {
                    auto pc = base;
                    pc.lambda1 = -k2 * e;
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, Pseudoharmonic>) {
                const ParametricCoefficients base{1.5, 0.0, 0.0, k2 * f.V0 / (4.0 * f.r0 * f.r0), 0.0,
                                                  k2 * f.V0 * f.r0 * f.r0 / 4.0 + ll / 4.0};
                const double v0 = f.V0;
                return [=](double e) {
                    auto pc = base;
                    pc.lambda2 = k2 * (e + 2.0 * v0) / 4.0;
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, NoncentralRadial>) {
                const ParametricCoefficients base{2.0, 0.0, 0.0, 0.0, -k2 * f.alpha, k2 * f.lambda};
                return [=](double e) {
                    auto pc = base;
                    pc.lambda1 = -k2 * e;
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, DeformedRosenMorse>) {
                const double k0 = k2 / (4.0 * f.a * f.a);  // m / (2 a^2 hbar^2)
                const ParametricCoefficients base{1.0, -2.0 * f.eta, -f.eta, k0 * f.V2 * f.eta * f.eta,
                                                  k0 * f.eta * (f.V1 + f.V2), 0.0};
                const double v1 = f.V1;
                return [=](double e) {
                    auto pc = base;
                    pc.lambda3 = k0 * (v1 - e);
                    return pc;
                };
            } else if constexpr (std::is_same_v<F, WoodsSaxon>) {
                const double a2 = f.a * f.a;
                const ParametricCoefficients base{1.0, -2.0, -1.0, k2 * f.V2 / a2, k2 * (f.V1 + f.V2) / a2, 0.0};
                return [=](double e) {
                    auto pc = base;
                    pc.lambda3 = -k2 * e / a2;
                    return pc;
                };
            } else {
                static_assert(std::is_same_v<F, PoschlTeller>);
                const double k0 = k2 / (4.0 * f.a * f.a);
                const ParametricCoefficients base{1.0, -2.0 * f.eta, -f.eta, 4.0 * k0 * f.V0 * f.eta, 4.0 * k0 * f.V0,
                                                  0.0};
                return [=](double e) {
                    auto pc = base;
                    pc.lambda3 = -k0 * e;
                    return pc;
                };
            }
        },
        spec);
    model.form.branch = model.form.coeff_at(0.0).branch();
    return model;
}

namespace detail {

// Jacobi-branch levels for the three c2/c3 = 2 families. The termination
// condition reduces to x^2 + (2n+1) x + n(n+1) = L for x = q0 - p0 > 0, and
// q0^2 - p0^2 = delta is energy independent. Returns q0 or nullopt if the
// level is not bound (needs q0 > 0 and p0 < 0).
inline std::optional<double> jacobi_level_q(int n, double big_l, double delta) {
    const double nn = static_cast<double>(n);
    const double x = 0.5 * (-(2.0 * nn + 1.0) + std::sqrt(1.0 + 4.0 * big_l));
    if (!(x > 0.0)) return std::nullopt;
    const double q = 0.5 * (x + delta / x);
    const double minus_p = 0.5 * (x - delta / x);
    if (!(q > 0.0) || !(minus_p > 0.0)) return std::nullopt;
    return q;
}

// Laguerre-branch radial families with c1 = 2, c2 = 0: sqrt(L1) = L2 / (2n + 1 + sqrt(1 + 4 L3)).
inline double coulomb_like_decay(int n, double lambda2, double lambda3) {
    return lambda2 / (2.0 * static_cast<double>(n) + 1.0 + std::sqrt(1.0 + 4.0 * lambda3));
}

}  // namespace detail

/// Closed-form energy of level n, or nullopt if that level is not bound.
inline std::optional<double> closed_form_energy(const PotentialSpec& spec, int l, const UnitsConfig& units, int n) {
    validate(spec);
    units.validate();
    detail::check_angular_momentum(spec, l);
    if (n < 0) throw InvalidParameters("quantum number n must be >= 0");
    const double hb = units.hbar;
    const double m = units.mass;
    const double k2 = 2.0 * m / (hb * hb);
    const double ll = static_cast<double>(l) * static_cast<double>(l + 1);
    const double nn = static_cast<double>(n);

    return std::visit(
        [&](const auto& f) -> std::optional<double> {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) {
                // E_n = -(hbar^2 a^2 / 8m) (sqrt(2m) V2 / (hbar a sqrt(V1)) - 2n - 1)^2
                const double bracket = std::sqrt(2.0 * m) * f.V2 / (hb * f.a * std::sqrt(f.V1)) - 2.0 * nn - 1.0;
                if (!(bracket > 0.0)) return std::nullopt;
                return -hb * hb * f.a * f.a / (8.0 * m) * bracket * bracket;
            } else if constexpr (std::is_same_v<F, Mie>) {
                const double decay = detail::coulomb_like_decay(n, k2 * f.a * f.V0, k2 * f.a * f.a * f.V0 / 2.0 + ll);
                return -decay * decay / k2;
            } else if constexpr (std::is_same_v<F, KratzerFues>) {
                const double decay = detail::coulomb_like_decay(n, 2.0 * k2 * f.De * f.re, k2 * f.De * f.re * f.re + ll);
                const double e = f.De - decay * decay / k2;
                return e;
            } else if constexpr (std::is_same_v<F, Coulomb>) {
                const double n0 = nn + static_cast<double>(l) + 1.0;
                return -m * f.e2 * f.e2 / (2.0 * hb * hb * n0 * n0);
            } else if constexpr (std::is_same_v<F, Pseudoharmonic>) {
                const double lambda3 = m * f.V0 * f.r0 * f.r0 / (2.0 * hb * hb) + ll / 4.0;
                const double omega = hb * std::sqrt(2.0 * f.V0 / m) / f.r0;
                return omega * (2.0 * nn + 1.0 + 2.0 * std::sqrt(1.0 / 16.0 + lambda3)) - 2.0 * f.V0;
            } else if constexpr (std::is_same_v<F, NoncentralRadial>) {
                if (!(f.alpha < 0.0)) return std::nullopt;
                const double lambda3 = k2 * f.lambda;
                const double denom = 2.0 * nn + 1.0 + std::sqrt(1.0 + 4.0 * lambda3);
                return -2.0 * m * f.alpha * f.alpha / (hb * hb * denom * denom);
            } else if constexpr (std::is_same_v<F, DeformedRosenMorse>) {
                const double k0 = m / (2.0 * f.a * f.a * hb * hb);
                const auto q = detail::jacobi_level_q(n, k0 * f.V2, k0 * f.V1);
                if (!q) return std::nullopt;
                return f.V1 - (*q) * (*q) / k0;
            } else if constexpr (std::is_same_v<F, WoodsSaxon>) {
                const double g = k2 / (f.a * f.a);
                const auto q = detail::jacobi_level_q(n, g * f.V2, g * f.V1);
                if (!q) return std::nullopt;
                return -(*q) * (*q) / g;
            } else {
                static_assert(std::is_same_v<F, PoschlTeller>);
                const double k0 = m / (2.0 * f.a * f.a * hb * hb);
                const auto q = detail::jacobi_level_q(n, 4.0 * k0 * f.V0 / f.eta, 0.0);
                if (!q) return std::nullopt;
                return -(*q) * (*q) / k0;
            }
        },
        spec);
}

inline constexpr int default_grid_points = 4000;

/// Oracle / quadrature grid: radial families use [1e-4 L, 80 L] with L the
/// family's length scale; 1-D families extend from the minimum until V is
/// within 1e-8 of the well depth of a finite asymptote, or 1e4 depths above
/// the threshold on a confining side.
inline numerics::RadialGrid default_grid(const PotentialSpec& spec, const UnitsConfig& units) {
    validate(spec);
    if (is_radial(spec)) {
        const double length = detail::radial_length_scale(spec, units);
        return {1e-4 * length, 80.0 * length, default_grid_points};
    }
    const auto minimum = potential_minimum(spec);
    const auto asym = asymptotes(spec);
    const double threshold = asym.threshold();
    const double depth = threshold - minimum.value;
    const auto [centre, half] = detail::one_dimensional_bracket(spec);
    const double step = half / 160.0;
    if (!(depth > 0.0)) return {centre - half / 2.0, centre + half / 2.0, default_grid_points};

    const auto edge = [&](double side_asymptote, double direction) {
        double x = minimum.x;
        for (int i = 0; i < 800; ++i) {
            x += direction * step;
            const double v = potential_value(spec, x);
            if (std::isfinite(side_asymptote)) {
                if (std::abs(v - side_asymptote) < 1e-8 * depth) break;
            } else if (v - threshold >= 1e4 * depth) {
                break;
            }
        }
        return x;
    };
    return {edge(asym.left, -1.0), edge(asym.right, 1.0), default_grid_points};
}

/// WKB decay exponent required beyond the outer turning point: the state's
/// amplitude there is below e^-18 of its turning-point value.
inline constexpr double tail_decay_exponent = 18.0;

namespace detail {

// Distance past `turn` (stepping in `direction`) at which the WKB exponent of
// a level at `energy` reaches tail_decay_exponent.
inline double tail_end(const PotentialSpec& spec, int l, const UnitsConfig& units, double energy, double turn,
                       double direction, double side_asymptote) {
    const double kappa_inf = std::sqrt(2.0 * units.mass * (side_asymptote - energy)) / units.hbar;
    const double dx = 0.02 / kappa_inf;
    double x = turn;
    double exponent = 0.0;
    for (int i = 0; i < 200000 && exponent < tail_decay_exponent; ++i) {
        x += direction * dx;
        const double gap = effective_potential(spec, l, units, x) - energy;
        if (gap > 0.0) exponent += std::sqrt(2.0 * units.mass * gap) / units.hbar * dx;
    }
    return x;
}

}  // namespace detail

/// default_grid widened on every side with a finite asymptote until a level
/// at `energy` has decayed (tail_decay_exponent); the spacing is kept.
inline numerics::RadialGrid covering_grid(const PotentialSpec& spec, int l, const UnitsConfig& units, double energy) {
    auto g = default_grid(spec, units);
    const auto asym = asymptotes(spec);
    const double h = g.spacing();
    double lo = g.x_min;
    double hi = g.x_max;
    if (is_radial(spec)) {
        if (std::isfinite(asym.right) && energy < asym.right) {
            const double length = detail::radial_length_scale(spec, units);
            double turn = g.x_min;
            for (double r = g.x_min; r < 1e7 * length; r *= 1.005) {
                if (effective_potential(spec, l, units, r) <= energy) turn = r;
            }
            hi = std::max(hi, detail::tail_end(spec, l, units, energy, turn, 1.0, asym.right));
        }
    } else {
        const auto minimum = potential_minimum(spec);
        const double step = 0.25 * h;
        const auto side = [&](double side_asymptote, double direction, double current) {
            if (!std::isfinite(side_asymptote) || !(energy < side_asymptote)) return current;
            double turn = minimum.x;
            for (int i = 0; i < 1000000 && effective_potential(spec, l, units, turn) <= energy; ++i) {
                turn += direction * step;
            }
            const double end = detail::tail_end(spec, l, units, energy, turn, direction, side_asymptote);
            return direction > 0 ? std::max(current, end) : std::min(current, end);
        };
        lo = side(asym.left, -1.0, lo);
        hi = side(asym.right, 1.0, hi);
    }
    if (lo == g.x_min && hi == g.x_max) return g;
    const int points = static_cast<int>(std::ceil((hi - lo) / h)) + 1;
    return {lo, hi, std::max(points, g.n_points)};
}

}  // namespace specbound
