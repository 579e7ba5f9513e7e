#pragma once

// Classical orthogonal polynomials used by the two solution branches:
// Jacobi P_n^(alpha,beta)(z) and associated Laguerre L_n^k(z).

#include <cmath>
#include <concepts>
#include <string>

#include "specbound/errors.hpp"

namespace specbound {

inline constexpr int max_polynomial_degree = 1000;

struct JacobiQuery {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double z = 0.0;
};

struct LaguerreQuery {
    int n = 0;
    double k = 0.0;
    double z = 0.0;
};

namespace detail {

inline void check_degree(int n) {
    if (n < 0 || n > max_polynomial_degree) {
        throw DegreeOverflow("polynomial degree " + std::to_string(n) + " outside [0, " +
                             std::to_string(max_polynomial_degree) + "]");
    }
}

// Power series about z = 1. Every coefficient is a product of Pochhammer
// symbols, so no parameter combination divides by zero.
template <std::floating_point T>
T jacobi_series_about_one(int n, T alpha, T beta, T z) {
    const T w = (z - T(1)) / T(2);
    T sum = T(0);
    T w_pow = T(1);
    for (int m = 0; m <= n; ++m) {
        // C(n, m) / n! = 1 / (m! (n-m)!)
        T coeff = T(1);
        for (int i = 1; i <= m; ++i) coeff /= T(i);
        for (int i = 1; i <= n - m; ++i) coeff /= T(i);
        for (int i = m + 1; i <= n; ++i) coeff *= alpha + T(i);           // (alpha+m+1)_{n-m}
        for (int i = 0; i < m; ++i) coeff *= alpha + beta + T(n + 1 + i);  // (alpha+beta+n+1)_m
        sum += coeff * w_pow;
        w_pow *= w;
    }
    return sum;
}

}  // namespace detail

/// P_n^(alpha,beta)(z) by forward three-term recurrence.
///
/// Any real alpha, beta are accepted. When a recurrence denominator vanishes
/// (alpha + beta a small negative integer) the value is taken from the
/// terminating hypergeometric series instead.
template <std::floating_point T>
T jacobi_p(int n, T alpha, T beta, T z) {
    detail::check_degree(n);
    if (n == 0) return T(1);
    const T ab = alpha + beta;
    T p_prev = T(1);
    T p = (alpha + T(1)) + (ab + T(2)) * (z - T(1)) / T(2);
    for (int j = 2; j <= n; ++j) {
        const T jj = T(j);
        const T c = T(2) * jj + ab;
        const T a1 = T(2) * jj * (jj + ab) * (c - T(2));
        if (std::abs(a1) < T(1e-12)) {
            return detail::jacobi_series_about_one(n, alpha, beta, z);
        }
        const T a2 = (c - T(1)) * (alpha * alpha - beta * beta);
        const T a3 = (c - T(2)) * (c - T(1)) * c;
        const T a4 = T(2) * (jj + alpha - T(1)) * (jj + beta - T(1)) * c;
        const T next = ((a2 + a3 * z) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    return p;
}

/// L_n^k(z) by the upward recurrence (j+1) L_{j+1} = (2j+1+k-z) L_j - (j+k) L_{j-1}.
template <std::floating_point T>
T laguerre_l(int n, T k, T z) {
    detail::check_degree(n);
    if (n == 0) return T(1);
    T l_prev = T(1);
    T l = T(1) + k - z;
    for (int j = 1; j < n; ++j) {
        const T jj = T(j);
        const T next = ((T(2) * jj + T(1) + k - z) * l - (jj + k) * l_prev) / (jj + T(1));
        l_prev = l;
        l = next;
    }
    return l;
}

/// Double-precision entry points; the recurrence runs in long double so the
/// result is within a few ulps of the exact value.
inline double jacobi_eval(const JacobiQuery& q) {
    return static_cast<double>(jacobi_p<long double>(q.n, q.alpha, q.beta, q.z));
}

inline double laguerre_eval(const LaguerreQuery& q) {
    return static_cast<double>(laguerre_l<long double>(q.n, q.k, q.z));
}

/// Sign in front of (alpha+beta+2)z in the Jacobi operator's first-derivative
/// coefficient. `minus` is the operator the polynomials satisfy.
enum class JacobiDerivativeSign { minus, plus };

inline constexpr double ode_check_step = 1e-5;

/// |(1-z^2) y'' + [beta - alpha -/+ (alpha+beta+2) z] y' + n(n+alpha+beta+1) y|
/// with y', y'' from second-order central differences of the recurrence,
/// carried in long double so the h^-2 roundoff stays below the truncation error.
inline double ode_residual_check(const JacobiQuery& q,
                                 JacobiDerivativeSign sign = JacobiDerivativeSign::minus) {
    using L = long double;
    const L h = ode_check_step;
    const L a = q.alpha, b = q.beta, z = q.z;
    const auto y = [&](L x) { return jacobi_p<L>(q.n, a, b, x); };
    const L y0 = y(z);
    const L yp = y(z + h);
    const L ym = y(z - h);
    const L d1 = (yp - ym) / (2 * h);
    const L d2 = (yp - 2 * y0 + ym) / (h * h);
    const L s = sign == JacobiDerivativeSign::minus ? -1 : 1;
    const L drift = b - a + s * (a + b + 2) * z;
    const L nn = q.n;
    return static_cast<double>(std::abs((1 - z * z) * d2 + drift * d1 + nn * (nn + a + b + 1) * y0));
}

/// |z y'' + (k+1-z) y' + n y| with finite-difference derivatives, as above.
inline double ode_residual_check(const LaguerreQuery& q) {
    using L = long double;
    const L h = ode_check_step;
    const L k = q.k, z = q.z;
    const auto y = [&](L x) { return laguerre_l<L>(q.n, k, x); };
    const L y0 = y(z);
    const L yp = y(z + h);
    const L ym = y(z - h);
    const L d1 = (yp - ym) / (2 * h);
    const L d2 = (yp - 2 * y0 + ym) / (h * h);
    return static_cast<double>(std::abs(z * d2 + (k + 1 - z) * d1 + static_cast<L>(q.n) * y0));
}

}  // namespace specbound
