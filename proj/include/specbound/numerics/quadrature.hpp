#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>

#include "specbound/errors.hpp"

namespace specbound::numerics {

/// Composite Simpson rule on uniformly spaced samples. An even sample count
/// is handled by closing the last panel with the trapezoid rule.
inline double simpson_integrate(std::span<const double> samples, double h) {
    const std::size_t n = samples.size();
    if (n < 3) throw TooFewSamples("simpson_integrate needs at least 3 samples");
    const std::size_t odd_n = (n % 2 == 1) ? n : n - 1;
    double odd_sum = 0.0;
    double even_sum = 0.0;
    for (std::size_t i = 1; i + 1 < odd_n; ++i) {
        if (i % 2 == 1) {
            odd_sum += samples[i];
        } else {
            even_sum += samples[i];
        }
    }
    double total = h / 3.0 * (samples[0] + samples[odd_n - 1] + 4.0 * odd_sum + 2.0 * even_sum);
    if (odd_n != n) total += 0.5 * h * (samples[n - 2] + samples[n - 1]);
    return total;
}

/// Sign changes between consecutive samples whose magnitude exceeds
/// `threshold`; samples below it are skipped. Default threshold is
/// 1e-8 * max|sample|.
inline int count_nodes(std::span<const double> samples, std::optional<double> threshold = std::nullopt) {
    double cut = 0.0;
    if (threshold) {
        cut = *threshold;
    } else {
        double peak = 0.0;
        for (double v : samples) peak = std::max(peak, std::abs(v));
        cut = 1e-8 * peak;
    }
    int nodes = 0;
    int last_sign = 0;
    for (double v : samples) {
        if (!(std::abs(v) > cut)) continue;
        const int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

struct Minimum {
    double x;
    double value;
};

/// Golden-section search for the minimum of a unimodal f on [a, b].
template <class F>
Minimum golden_section_minimize(F&& f, double a, double b, double tol = 1e-12, int max_iterations = 500) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iterations && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

}  // namespace specbound::numerics
