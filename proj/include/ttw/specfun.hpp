#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ttw::specfun {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients. Valid for re(x) >= 0.5;
// smaller positive arguments go through Gamma(x) = Gamma(x+1)/x. The
// reflection branch is intentionally absent: nothing here evaluates at
// negative arguments.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// A_g(z) with denominators (z + i), expecting the shifted argument z = x - 1.
inline double lanczos_sum(double z) {
    double s = lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) s += lanczos_coeff[i] / (z + i);
    return s;
}

} // namespace detail

/// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_gamma: requires finite x > 0");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    double z = x - 1.0;
    double t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(z));
}

/// Gamma(x) for x > 0.
inline double gamma_real(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("gamma_real: requires finite x > 0");
    if (x < 0.5) return gamma_real(x + 1.0) / x;
    double z = x - 1.0;
    double t = z + detail::lanczos_g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) *
           detail::lanczos_sum(z);
}

/// Generalized Laguerre polynomial L_n^(a)(x) by the ascending three-term
/// recurrence, stable for a > -1 and x >= 0. The scalar type is generic so
/// the same recurrence serves complex arguments.
template <typename T>
T laguerre(int n, double a, T x) {
    if (n < 0) throw std::domain_error("laguerre: n must be >= 0");
    if (!(a > -1.0)) throw std::domain_error("laguerre: requires a > -1");
    T p0 = T(1);
    if (n == 0) return p0;
    T p1 = T(1 + a) - x;
    for (int m = 1; m < n; ++m) {
        T p2 = ((T(2 * m + 1 + a) - x) * p1 - T(m + a) * p0) / T(m + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace detail {

template <typename T>
T jacobi_recurrence(int l, double a, double b, T x) {
    T p0 = T(1);
    if (l == 0) return p0;
    T p1 = T(0.5 * (a - b)) + T(0.5 * (a + b + 2)) * x;
    for (int m = 2; m <= l; ++m) {
        double c = 2.0 * m + a + b;
        double a1 = 2.0 * m * (m + a + b) * (c - 2.0);
        double a2 = (c - 1.0) * (a * a - b * b);
        double a3 = (c - 2.0) * (c - 1.0) * c;
        double a4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * c;
        T p2 = ((T(a2) + T(a3) * x) * p1 - T(a4) * p0) / T(a1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

} // namespace detail

/// Jacobi polynomial P_l^(a,b)(x) for a, b > -1. Arguments outside [-1,1]
/// are polynomial extrapolation; callers must opt in explicitly.
inline double jacobi(int l, double a, double b, double x, bool allow_extrapolation = false) {
    if (l < 0) throw std::domain_error("jacobi: l must be >= 0");
    if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("jacobi: requires a, b > -1");
    if (!allow_extrapolation && std::abs(x) > 1.0 + 1e-12)
        throw std::domain_error("jacobi: |x| > 1 (pass allow_extrapolation to override)");
    return detail::jacobi_recurrence(l, a, b, x);
}

/// Jacobi polynomial at a complex argument (needed for complex angular
/// parameterizations; no interval restriction applies off the real axis).
inline std::complex<double> jacobi(int l, double a, double b, std::complex<double> x) {
    if (l < 0) throw std::domain_error("jacobi: l must be >= 0");
    if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("jacobi: requires a, b > -1");
    return detail::jacobi_recurrence(l, a, b, x);
}

/// d/dx P_l^(a,b)(x) via the parameter-shift identity
/// P_l' = (l+a+b+1)/2 * P_{l-1}^(a+1,b+1).
inline double jacobi_derivative(int l, double a, double b, double x) {
    if (l <= 0) return 0.0;
    return 0.5 * (l + a + b + 1.0) * detail::jacobi_recurrence(l - 1, a + 1.0, b + 1.0, x);
}

inline double jacobi_second_derivative(int l, double a, double b, double x) {
    if (l <= 1) return 0.0;
    return 0.25 * (l + a + b + 1.0) * (l + a + b + 2.0) *
           detail::jacobi_recurrence(l - 2, a + 2.0, b + 2.0, x);
}

/// Bessel function of the first kind, J_nu(z), by the ascending power
/// series (z/2)^nu sum_m (-z^2/4)^m / (m! Gamma(nu+m+1)). Restricted to the
/// series regime |z| <= 50; the tail is truncated once a term drops below
/// 1e-16 of the running sum.
inline std::complex<double> bessel_j(double nu, std::complex<double> z) {
    if (!(nu >= 0.0)) throw std::domain_error("bessel_j: requires nu >= 0");
    if (std::abs(z) > 50.0) throw std::domain_error("bessel_j: |z| > 50 outside series regime");
    if (z == std::complex<double>(0.0)) return nu == 0.0 ? 1.0 : 0.0;

    std::complex<double> q = -0.25 * z * z;
    std::complex<double> term = std::exp(-log_gamma(nu + 1.0));
    std::complex<double> sum = term;
    for (int m = 0; m < 500; ++m) {
        term *= q / ((m + 1.0) * (nu + m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            std::complex<double> prefactor = std::exp(nu * std::log(0.5 * z));
            return prefactor * sum;
        }
    }
    throw ConvergenceError("bessel_j: series did not converge in 500 terms");
}

/// J_nu at a real argument, returned as the real part (imaginary part is
/// identically zero for x >= 0).
inline double bessel_j(double nu, double x) {
    return bessel_j(nu, std::complex<double>(x, 0.0)).real();
}

} // namespace ttw::specfun
