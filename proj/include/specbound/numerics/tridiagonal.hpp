#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace specbound::numerics {

/// Real symmetric tridiagonal matrix: `diag` has n entries, `off` has n-1.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    [[nodiscard]] std::size_t size() const { return diag.size(); }
};

inline constexpr double sturm_pivot_floor = 1e-300;

/// Number of eigenvalues strictly below `lambda`, from the signs of the
/// LDL^T pivots of (T - lambda I).
inline int sturm_count(std::span<const double> diag, std::span<const double> off, double lambda) {
    if (diag.empty()) return 0;
    if (off.size() + 1 != diag.size()) {
        throw std::invalid_argument("sturm_count: off-diagonal must have one entry fewer than the diagonal");
    }
    int count = 0;
    double d = diag[0] - lambda;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(d) < sturm_pivot_floor) d = d < 0.0 ? -sturm_pivot_floor : sturm_pivot_floor;
        if (d < 0.0) ++count;
        if (i + 1 == diag.size()) break;
        d = diag[i + 1] - lambda - off[i] * off[i] / d;
    }
    return count;
}

inline int sturm_count(const SymmetricTridiagonal& t, double lambda) { return sturm_count(t.diag, t.off, lambda); }

/// Gershgorin interval containing the whole spectrum.
inline std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(t.off[i - 1]);
        if (i + 1 < n) radius += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    return {lo, hi};
}

/// The k-th smallest eigenvalue (k = 0 is the lowest) by Sturm bisection,
/// to absolute width `tol` or floating-point adjacency, whichever comes first.
inline double kth_eigenvalue(const SymmetricTridiagonal& t, int k, double tol = 1e-12) {
    if (k < 0 || static_cast<std::size_t>(k) >= t.size()) {
        throw std::out_of_range("kth_eigenvalue: index outside the spectrum");
    }
    auto [lo, hi] = gershgorin_bounds(t);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Up to `count` lowest eigenvalues lying strictly below `upper_limit`.
inline std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int count,
                                              double upper_limit = std::numeric_limits<double>::infinity(),
                                              double tol = 1e-12) {
    int available = static_cast<int>(t.size());
    if (std::isfinite(upper_limit)) available = sturm_count(t, upper_limit);
    const int wanted = std::min(count, available);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(std::max(wanted, 0)));
    for (int k = 0; k < wanted; ++k) values.push_back(kth_eigenvalue(t, k, tol));
    return values;
}

namespace detail {

// Tridiagonal LU with partial pivoting (the dgttrf/dgttrs scheme). The
// factorization of (T - shift I) is reused across inverse-iteration sweeps.
class PivotedTridiagonalLU {
public:
    PivotedTridiagonalLU(const SymmetricTridiagonal& t, double shift)
        : n_(t.size()), dl_(t.off), d_(t.diag), du_(t.off), du2_(n_ > 2 ? n_ - 2 : 0, 0.0), swapped_(n_, false) {
        for (double& v : d_) v -= shift;
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] == 0.0) d_[i] = tiny_;
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < n_) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swapped_[i] = true;
            }
        }
        if (n_ > 0 && d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny_;
    }

    void solve_in_place(std::vector<double>& b) const {
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            if (swapped_[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= dl_[i] * b[i];
        }
        if (n_ == 0) return;
        b[n_ - 1] /= d_[n_ - 1];
        if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
        for (std::size_t j = n_ < 3 ? 0 : n_ - 2; j-- > 0;) {
            b[j] = (b[j] - du_[j] * b[j + 1] - du2_[j] * b[j + 2]) / d_[j];
        }
    }

private:
    static constexpr double tiny_ = 1e-300;
    std::size_t n_;
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<bool> swapped_;
};

}  // namespace detail

/// Eigenvector for a converged eigenvalue by shifted inverse iteration.
/// Returned with unit Euclidean norm and its largest-magnitude entry positive.
inline std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue, int max_iterations = 20) {
    const std::size_t n = t.size();
    const double shift = eigenvalue + 1e-10 * std::max(1.0, std::abs(eigenvalue));
    const detail::PivotedTridiagonalLU lu(t, shift);
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<double> w = v;
        lu.solve_in_place(w);
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : w) x /= norm;
        double change = 0.0;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += w[i] * v[i];
        const double sgn = dot < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(sgn * w[i] - v[i]));
        for (std::size_t i = 0; i < n; ++i) v[i] = sgn * w[i];
        if (change < 1e-14) break;
    }
    const auto peak = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (peak != v.end() && *peak < 0.0) {
        for (double& x : v) x = -x;
    }
    return v;
}

}  // namespace specbound::numerics
