#pragma once

// Explicit finite-sum forms of the Jacobi and associated Laguerre
// polynomials. They share no code with the recurrences in
// special_functions.hpp and exist to check them.

#include <string>

#include "specbound/errors.hpp"
#include "specbound/special_functions.hpp"

namespace specbound::oracles {

inline constexpr int max_sum_degree = 20;

/// Generalized binomial C(x, k) = prod_{i=1..k} (x - k + i) / i, i.e. the
/// Gamma ratio Gamma(x+1) / (Gamma(k+1) Gamma(x-k+1)) unrolled.
inline long double generalized_binomial(long double x, int k) {
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c *= (x - static_cast<long double>(k - i)) / static_cast<long double>(i);
    return c;
}

inline void check_sum_degree(int n) {
    if (n < 0 || n > max_sum_degree) {
        throw DegreeOverflow("explicit-sum oracle supports degrees 0.." + std::to_string(max_sum_degree) +
                             ", got " + std::to_string(n));
    }
}

/// P_n^(a,b)(z) = sum_m C(n+a, n-m) C(n+b, m) ((z-1)/2)^m ((z+1)/2)^(n-m)
inline double jacobi_sum_oracle(const JacobiQuery& q) {
    check_sum_degree(q.n);
    const long double a = q.alpha;
    const long double b = q.beta;
    const long double lo = (static_cast<long double>(q.z) - 1.0L) / 2.0L;
    const long double hi = (static_cast<long double>(q.z) + 1.0L) / 2.0L;
    long double sum = 0.0L;
    for (int m = 0; m <= q.n; ++m) {
        long double term = generalized_binomial(q.n + a, q.n - m) * generalized_binomial(q.n + b, m);
        for (int i = 0; i < m; ++i) term *= lo;
        for (int i = 0; i < q.n - m; ++i) term *= hi;
        sum += term;
    }
    return static_cast<double>(sum);
}

/// L_n^k(z) = sum_i (-1)^i C(n+k, n-i) z^i / i!
inline double laguerre_sum_oracle(const LaguerreQuery& q) {
    check_sum_degree(q.n);
    const long double z = q.z;
    long double sum = 0.0L;
    long double z_pow_over_fact = 1.0L;
    for (int i = 0; i <= q.n; ++i) {
        const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
        sum += sign * generalized_binomial(q.n + static_cast<long double>(q.k), q.n - i) * z_pow_over_fact;
        z_pow_over_fact *= z / static_cast<long double>(i + 1);
    }
    return static_cast<double>(sum);
}

}  // namespace specbound::oracles
