#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ttw/specfun.hpp"
#include "ttw/tridiag.hpp"

namespace ttw::quad {

/// Nodes and weights of an n-point Gauss rule. For Legendre the weight
/// function is 1 on [-1,1]; for Laguerre it is e^(-x) x^alpha on [0,inf),
/// folded into the weights as usual.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

// Golub-Welsch nodes via Sturm bisection on the Jacobi matrix, weights from
// the Christoffel identity w_i = weight(x_i) / sum_m phi_m(x_i)^2 where
// phi_m = sqrt(weight) * (orthonormal polynomial), evaluated through the
// same three-term recurrence. Keeping the sqrt(weight) factor inside the
// recurrence keeps every intermediate bounded, so large n and large
// Laguerre nodes neither overflow nor underflow.
inline Rule golub_welsch(const std::vector<double>& a, const std::vector<double>& b,
                         double log_mu0, auto&& log_weight) {
    const int n = static_cast<int>(a.size());
    Rule rule;
    rule.x = tridiag::lowest_eigenvalues(a, b, n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = rule.x[i];
        double lw = log_weight(x);
        double phi0 = std::exp(0.5 * lw - 0.5 * log_mu0);
        double sum = phi0 * phi0;
        double pm1 = 0.0, p = phi0;
        for (int m = 0; m + 1 < n; ++m) {
            double pnext = ((x - a[m]) * p - (m > 0 ? b[m - 1] : 0.0) * pm1) / b[m];
            pm1 = p;
            p = pnext;
            sum += p * p;
        }
        rule.w[i] = std::exp(lw) / sum;
    }
    return rule;
}

} // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1].
inline Rule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::vector<double> a(n, 0.0), b(n - 1);
    for (int m = 1; m < n; ++m) b[m - 1] = m / std::sqrt(4.0 * m * m - 1.0);
    return detail::golub_welsch(a, b, std::log(2.0), [](double) { return 0.0; });
}

/// n-point Gauss-Legendre rule mapped to [lo, hi].
inline Rule gauss_legendre(int n, double lo, double hi) {
    Rule r = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * r.x[i];
        r.w[i] *= half;
    }
    return r;
}

/// n-point generalized Gauss-Laguerre rule, weight e^(-x) x^alpha.
inline Rule gauss_laguerre(int n, double alpha = 0.0) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be >= 1");
    if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: requires alpha > -1");
    std::vector<double> a(n), b(n - 1);
    for (int m = 0; m < n; ++m) a[m] = 2.0 * m + alpha + 1.0;
    for (int m = 1; m < n; ++m) b[m - 1] = std::sqrt(m * (m + alpha));
    return detail::golub_welsch(a, b, specfun::log_gamma(alpha + 1.0), [alpha](double x) {
        return -x + (alpha == 0.0 ? 0.0 : alpha * std::log(x));
    });
}

} // namespace ttw::quad
