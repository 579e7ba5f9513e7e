#pragma once

// The nine potential families, their parameters and V(x).

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "specbound/errors.hpp"

namespace specbound {

/// hbar and mass; energies and lengths are in whatever system these fix.
struct UnitsConfig {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidParameters("units: hbar must be > 0");
        if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidParameters("units: mass must be > 0");
    }

    friend bool operator==(const UnitsConfig&, const UnitsConfig&) = default;
};

/// V(x) = V1 exp(-2ax) - V2 exp(-ax)
struct GeneralizedMorse {
    double V1 = 0.0;
    double V2 = 0.0;
    double a = 0.0;
    friend bool operator==(const GeneralizedMorse&, const GeneralizedMorse&) = default;
};

/// V(r) = V0 [ (a/r)^2 / 2 - a/r ]
struct Mie {
    double V0 = 0.0;
    double a = 0.0;
    friend bool operator==(const Mie&, const Mie&) = default;
};

/// V(r) = De ((r - re)/r)^2
struct KratzerFues {
    double De = 0.0;
    double re = 0.0;
    friend bool operator==(const KratzerFues&, const KratzerFues&) = default;
};

/// V(r) = -e2 / r
struct Coulomb {
    double e2 = 0.0;
    friend bool operator==(const Coulomb&, const Coulomb&) = default;
};

/// V(r) = V0 (r/r0 - r0/r)^2
struct Pseudoharmonic {
    double V0 = 0.0;
    double r0 = 0.0;
    friend bool operator==(const Pseudoharmonic&, const Pseudoharmonic&) = default;
};

/// Radial part alpha/r of a noncentral potential; the angular equation has
/// been separated and enters only through the constant lambda (a lambda/r^2
/// term replacing the centrifugal barrier).
struct NoncentralRadial {
    double alpha = 0.0;
    double lambda = 0.0;
    friend bool operator==(const NoncentralRadial&, const NoncentralRadial&) = default;
};

/// V(x) = V1 / (1 + eta e^{-2ax}) - V2 eta e^{-2ax} / (1 + eta e^{-2ax})^2
struct DeformedRosenMorse {
    double V1 = 0.0;
    double V2 = 0.0;
    double a = 0.0;
    double eta = 0.0;
    friend bool operator==(const DeformedRosenMorse&, const DeformedRosenMorse&) = default;
};

/// V(x) = -V1 / (1 + e^{ax}) - V2 e^{ax} / (1 + e^{ax})^2
struct WoodsSaxon {
    double V1 = 0.0;
    double V2 = 0.0;
    double a = 0.0;
    friend bool operator==(const WoodsSaxon&, const WoodsSaxon&) = default;
};

/// V(x) = -4 V0 e^{-2ax} / (1 + eta e^{-2ax})^2  (eta = 1: -V0 sech^2(ax))
struct PoschlTeller {
    double V0 = 0.0;
    double a = 0.0;
    double eta = 0.0;
    friend bool operator==(const PoschlTeller&, const PoschlTeller&) = default;
};

using PotentialSpec = std::variant<GeneralizedMorse, Mie, KratzerFues, Coulomb, Pseudoharmonic, NoncentralRadial,
                                   DeformedRosenMorse, WoodsSaxon, PoschlTeller>;

inline constexpr std::size_t family_count = std::variant_size_v<PotentialSpec>;

template <class Family>
struct ParamInfo {
    std::string_view name;
    std::string_view unit;
    double Family::*member;
};

template <class Family>
struct family_traits;

template <>
struct family_traits<GeneralizedMorse> {
    static constexpr std::string_view name = "GeneralizedMorse";
    static constexpr int case_number = 1;
    static constexpr bool radial = false;
    static constexpr std::array<ParamInfo<GeneralizedMorse>, 3> params{{{"V1", "energy", &GeneralizedMorse::V1},
                                                                        {"V2", "energy", &GeneralizedMorse::V2},
                                                                        {"a", "1/length", &GeneralizedMorse::a}}};
};

template <>
struct family_traits<Mie> {
    static constexpr std::string_view name = "Mie";
    static constexpr int case_number = 2;
    static constexpr bool radial = true;
    static constexpr std::array<ParamInfo<Mie>, 2> params{{{"V0", "energy", &Mie::V0}, {"a", "length", &Mie::a}}};
};

template <>
struct family_traits<KratzerFues> {
    static constexpr std::string_view name = "KratzerFues";
    static constexpr int case_number = 3;
    static constexpr bool radial = true;
    static constexpr std::array<ParamInfo<KratzerFues>, 2> params{
        {{"De", "energy", &KratzerFues::De}, {"re", "length", &KratzerFues::re}}};
};

template <>
struct family_traits<Coulomb> {
    static constexpr std::string_view name = "Coulomb";
    static constexpr int case_number = 4;
    static constexpr bool radial = true;
    static constexpr std::array<ParamInfo<Coulomb>, 1> params{{{"e2", "energy*length", &Coulomb::e2}}};
};

template <>
struct family_traits<Pseudoharmonic> {
    static constexpr std::string_view name = "Pseudoharmonic";
    static constexpr int case_number = 5;
    static constexpr bool radial = true;
    static constexpr std::array<ParamInfo<Pseudoharmonic>, 2> params{
        {{"V0", "energy", &Pseudoharmonic::V0}, {"r0", "length", &Pseudoharmonic::r0}}};
};

template <>
struct family_traits<NoncentralRadial> {
    static constexpr std::string_view name = "NoncentralRadial";
    static constexpr int case_number = 6;
    static constexpr bool radial = true;
    static constexpr std::array<ParamInfo<NoncentralRadial>, 2> params{
        {{"alpha", "energy*length", &NoncentralRadial::alpha},
         {"lambda", "energy*length^2", &NoncentralRadial::lambda}}};
};

template <>
struct family_traits<DeformedRosenMorse> {
    static constexpr std::string_view name = "DeformedRosenMorse";
    static constexpr int case_number = 7;
    static constexpr bool radial = false;
    static constexpr std::array<ParamInfo<DeformedRosenMorse>, 4> params{
        {{"V1", "energy", &DeformedRosenMorse::V1},
         {"V2", "energy", &DeformedRosenMorse::V2},
         {"a", "1/length", &DeformedRosenMorse::a},
         {"eta", "dimensionless", &DeformedRosenMorse::eta}}};
};

template <>
struct family_traits<WoodsSaxon> {
    static constexpr std::string_view name = "WoodsSaxon";
    static constexpr int case_number = 8;
    static constexpr bool radial = false;
    static constexpr std::array<ParamInfo<WoodsSaxon>, 3> params{{{"V1", "energy", &WoodsSaxon::V1},
                                                                  {"V2", "energy", &WoodsSaxon::V2},
                                                                  {"a", "1/length", &WoodsSaxon::a}}};
};

template <>
struct family_traits<PoschlTeller> {
    static constexpr std::string_view name = "PoschlTeller";
    static constexpr int case_number = 9;
    static constexpr bool radial = false;
    static constexpr std::array<ParamInfo<PoschlTeller>, 3> params{{{"V0", "energy", &PoschlTeller::V0},
                                                                    {"a", "1/length", &PoschlTeller::a},
                                                                    {"eta", "dimensionless", &PoschlTeller::eta}}};
};

inline std::string_view family_name(const PotentialSpec& spec) {
    return std::visit([](const auto& f) { return family_traits<std::decay_t<decltype(f)>>::name; }, spec);
}

inline bool is_radial(const PotentialSpec& spec) {
    return std::visit([](const auto& f) { return family_traits<std::decay_t<decltype(f)>>::radial; }, spec);
}

/// Parameter values keyed by their field names.
inline std::map<std::string, double> parameters_of(const PotentialSpec& spec) {
    return std::visit(
        [](const auto& f) {
            std::map<std::string, double> out;
            for (const auto& p : family_traits<std::decay_t<decltype(f)>>::params) out[std::string(p.name)] = f.*p.member;
            return out;
        },
        spec);
}

namespace detail {

inline std::string normalized_key(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

template <class Family>
PotentialSpec build_family(const std::map<std::string, double>& values) {
    Family f{};
    for (const auto& p : family_traits<Family>::params) {
        const auto it = values.find(std::string(p.name));
        if (it == values.end()) {
            throw InvalidParameters(std::string(family_traits<Family>::name) + ": missing parameter '" +
                                    std::string(p.name) + "'");
        }
        f.*p.member = it->second;
    }
    for (const auto& [key, value] : values) {
        const bool known = std::any_of(family_traits<Family>::params.begin(), family_traits<Family>::params.end(),
                                       [&](const auto& p) { return p.name == key; });
        if (!known) {
            throw InvalidParameters(std::string(family_traits<Family>::name) + ": unknown parameter '" + key + "'");
        }
    }
    return f;
}

template <std::size_t I = 0>
PotentialSpec build_by_name(const std::string& key, const std::map<std::string, double>& values) {
    if constexpr (I == family_count) {
        throw InvalidParameters("unknown potential family");
    } else {
        using Family = std::variant_alternative_t<I, PotentialSpec>;
        if (normalized_key(family_traits<Family>::name) == key) return build_family<Family>(values);
        return build_by_name<I + 1>(key, values);
    }
}

}  // namespace detail

/// Build a PotentialSpec from a family name (exact, or a short alias such as "morse",
/// "kratzer", "rosenmorse", "noncentral"; case and punctuation are ignored)
/// and its parameter values.
inline PotentialSpec make_potential(std::string_view family, const std::map<std::string, double>& values) {
    static const std::map<std::string, std::string, std::less<>> aliases{
        {"morse", "generalizedmorse"}, {"kratzer", "kratzerfues"},     {"noncentral", "noncentralradial"},
        {"rosenmorse", "deformedrosenmorse"}, {"poeschlteller", "poschlteller"}, {"pseudoharmonicoscillator", "pseudoharmonic"}};
    std::string key = detail::normalized_key(family);
    if (const auto it = aliases.find(key); it != aliases.end()) key = it->second;
    try {
        return detail::build_by_name(key, values);
    } catch (const InvalidParameters& e) {
        if (std::string_view(e.what()) == "unknown potential family") {
            throw InvalidParameters("unknown potential family '" + std::string(family) + "'");
        }
        throw;
    }
}

namespace detail {

inline void require(bool ok, std::string_view family, std::string_view what) {
    if (!ok) throw InvalidParameters(std::string(family) + ": " + std::string(what));
}

}  // namespace detail

/// Rejects parameter sets that cannot support bound states or make V undefined.
inline void validate(const PotentialSpec& spec) {
    for (const auto& [key, value] : parameters_of(spec)) {
        if (!std::isfinite(value)) throw InvalidParameters(std::string(family_name(spec)) + ": " + key + " is not finite");
    }
    using detail::require;
    std::visit(
        [](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            constexpr auto name = family_traits<F>::name;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) {
                require(f.V1 > 0.0, name, "V1 must be > 0");
                require(f.V2 > 0.0, name, "V2 must be > 0");
                require(f.a > 0.0, name, "a must be > 0");
            } else if constexpr (std::is_same_v<F, Mie>) {
                require(f.V0 > 0.0, name, "V0 must be > 0");
                require(f.a > 0.0, name, "a must be > 0");
            } else if constexpr (std::is_same_v<F, KratzerFues>) {
                require(f.De > 0.0, name, "De must be > 0");
                require(f.re > 0.0, name, "re must be > 0");
            } else if constexpr (std::is_same_v<F, Coulomb>) {
                require(f.e2 > 0.0, name, "e2 must be > 0");
            } else if constexpr (std::is_same_v<F, Pseudoharmonic>) {
                require(f.V0 > 0.0, name, "V0 must be > 0");
                require(f.r0 > 0.0, name, "r0 must be > 0");
            } else if constexpr (std::is_same_v<F, NoncentralRadial>) {
                // alpha >= 0 is legal and simply has no bound states; lambda is
                // checked against hbar^2/8m in the catalog (fall to centre).
            } else if constexpr (std::is_same_v<F, DeformedRosenMorse>) {
                require(f.V2 > 0.0, name, "V2 must be > 0");
                require(f.a > 0.0, name, "a must be > 0");
                require(f.eta > 0.0, name, "eta must be > 0");
            } else if constexpr (std::is_same_v<F, WoodsSaxon>) {
                require(f.V1 >= 0.0, name, "V1 must be >= 0");
                require(f.V2 > 0.0, name, "V2 must be > 0");
                require(f.a > 0.0, name, "a must be > 0");
            } else if constexpr (std::is_same_v<F, PoschlTeller>) {
                require(f.V0 > 0.0, name, "V0 must be > 0");
                require(f.a > 0.0, name, "a must be > 0");
                require(f.eta > 0.0, name, "eta must be > 0");
            }
        },
        spec);
}

namespace detail {

// log(1 + e^t) without overflow
inline double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace detail

/// V(x); x is r for radial families and must then be > 0.
inline double potential_value(const PotentialSpec& spec, double x) {
    if (is_radial(spec) && !(x > 0.0)) throw OutOfDomain("radial potential evaluated at r <= 0");
    if (!std::isfinite(x)) throw OutOfDomain("potential evaluated at a non-finite coordinate");
    return std::visit(
        [x](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) {
                return f.V1 * std::exp(-2.0 * f.a * x) - f.V2 * std::exp(-f.a * x);
            } else if constexpr (std::is_same_v<F, Mie>) {
                const double u = f.a / x;
                return f.V0 * (0.5 * u * u - u);
            } else if constexpr (std::is_same_v<F, KratzerFues>) {
                const double u = (x - f.re) / x;
                return f.De * u * u;
            } else if constexpr (std::is_same_v<F, Coulomb>) {
                return -f.e2 / x;
            } else if constexpr (std::is_same_v<F, Pseudoharmonic>) {
                const double u = x / f.r0 - f.r0 / x;
                return f.V0 * u * u;
            } else if constexpr (std::is_same_v<F, NoncentralRadial>) {
                return f.alpha / x;
            } else if constexpr (std::is_same_v<F, DeformedRosenMorse>) {
                // 1/(1 + eta e^{-2ax}) and eta e^{-2ax}/(1+eta e^{-2ax})^2 via a logistic
                const double t = std::log(f.eta) - 2.0 * f.a * x;
                const double w = std::exp(-detail::softplus(t));  // 1/(1+e^t)
                const double v = std::exp(t - detail::softplus(t));  // e^t/(1+e^t)
                return f.V1 * w - f.V2 * v * w;
            } else if constexpr (std::is_same_v<F, WoodsSaxon>) {
                const double t = f.a * x;
                const double s = std::exp(-detail::softplus(t));  // 1/(1+e^t)
                const double one_minus_s = std::exp(t - detail::softplus(t));
                return -f.V1 * s - f.V2 * s * one_minus_s;
            } else {
                static_assert(std::is_same_v<F, PoschlTeller>);
                const double t = std::log(f.eta) - 2.0 * f.a * x;
                const double w = std::exp(-detail::softplus(t));
                const double v = std::exp(t - detail::softplus(t));
                return -4.0 * f.V0 * v * w / f.eta;
            }
        },
        spec);
}

struct Asymptotes {
    double left;   // x -> -inf (or r -> 0 for radial: unused, +inf)
    double right;  // x -> +inf

    /// Bound states lie strictly below this.
    [[nodiscard]] double threshold() const { return std::min(left, right); }
};

inline Asymptotes asymptotes(const PotentialSpec& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(
        [](const auto& f) -> Asymptotes {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, GeneralizedMorse>) return {inf, 0.0};
            else if constexpr (std::is_same_v<F, Mie>) return {inf, 0.0};
            else if constexpr (std::is_same_v<F, KratzerFues>) return {inf, f.De};
            else if constexpr (std::is_same_v<F, Coulomb>) return {inf, 0.0};
            else if constexpr (std::is_same_v<F, Pseudoharmonic>) return {inf, inf};
            else if constexpr (std::is_same_v<F, NoncentralRadial>) return {inf, 0.0};
            else if constexpr (std::is_same_v<F, DeformedRosenMorse>) return {0.0, f.V1};
            else if constexpr (std::is_same_v<F, WoodsSaxon>) return {-f.V1, 0.0};
            else return {0.0, 0.0};
        },
        spec);
}

struct FamilyDescriptor {
    int case_number;
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;  // name, unit
    std::string branch;                                            // "c3 = 0" or "nonzero c3"
    bool radial;
    std::string supported_l;
};

/// One descriptor per family in catalog order.
inline std::vector<FamilyDescriptor> list_families() {
    std::vector<FamilyDescriptor> out;
    const auto add = [&out]<class F>(F) {
        using T = family_traits<F>;
        FamilyDescriptor d{T::case_number, std::string(T::name), {}, T::case_number <= 6 ? "c3 = 0" : "nonzero c3",
                           T::radial, ""};
        for (const auto& p : T::params) d.parameters.emplace_back(std::string(p.name), std::string(p.unit));
        if constexpr (std::is_same_v<F, NoncentralRadial>) {
            d.supported_l = "0 (angular part via lambda)";
        } else {
            d.supported_l = T::radial ? "any l >= 0" : "0 (one-dimensional)";
        }
        out.push_back(std::move(d));
    };
    std::apply([&](auto... fams) { (add(fams), ...); },
               std::tuple<GeneralizedMorse, Mie, KratzerFues, Coulomb, Pseudoharmonic, NoncentralRadial,
                          DeformedRosenMorse, WoodsSaxon, PoschlTeller>{});
    return out;
}

}  // namespace specbound
