#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ttw::tridiag {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag d,
/// off-diagonal e) strictly below x, from the Sturm sequence of leading
/// principal minors.
inline int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double off = (i == 0) ? 0.0 : e[i - 1];
        q = d[i] - x - (i == 0 ? 0.0 : off * off / q);
        if (q == 0.0) q = tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

/// Lowest n_lowest eigenvalues, ascending, by bisection on the Sturm count.
/// Deterministic: no randomness, no iterative shifts.
inline std::vector<double> lowest_eigenvalues(const std::vector<double>& d,
                                              const std::vector<double>& e,
                                              int n_lowest) {
    const int n = static_cast<int>(d.size());
    if (n == 0 || n_lowest <= 0) return {};
    if (static_cast<int>(e.size()) != n - 1)
        throw std::invalid_argument("lowest_eigenvalues: off-diagonal size must be n-1");
    n_lowest = std::min(n_lowest, n);

    // Gershgorin bounds
    double lo = d[0], hi = d[0];
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i < n - 1 ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }

    std::vector<double> out(n_lowest);
    for (int m = 0; m < n_lowest; ++m) {
        double a = lo, b = hi;
        for (int it = 0; it < 120 && b - a > 1e-15 * std::max(1.0, std::max(std::abs(a), std::abs(b))); ++it) {
            double mid = 0.5 * (a + b);
            if (count_below(d, e, mid) > m)
                b = mid;
            else
                a = mid;
        }
        out[m] = 0.5 * (a + b);
    }
    return out;
}

} // namespace ttw::tridiag
