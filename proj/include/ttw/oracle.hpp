#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttw/params.hpp"
#include "ttw/rational.hpp"
#include "ttw/specfun.hpp"
#include "ttw/tridiag.hpp"

namespace ttw::oracle {

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform grid for the finite-difference solvers. The solve is repeated on
/// n_points, 2 n_points, ... (refinement_levels grids) and extrapolated.
struct GridSpec {
    int n_points = 800;
    double lo = 0.0;
    double hi = 1.0;
    int refinement_levels = 3;

    GridSpec() = default;
    GridSpec(int n, double lo_, double hi_, int levels = 3)
        : n_points(n), lo(lo_), hi(hi_), refinement_levels(levels) {
        if (n_points < 64) throw std::invalid_argument("GridSpec: n_points must be >= 64");
        if (!(hi > lo)) throw std::invalid_argument("GridSpec: requires hi > lo");
        if (refinement_levels < 2)
            throw std::invalid_argument("GridSpec: refinement_levels must be >= 2");
    }
};

namespace detail {

// Dirichlet FD eigenvalues of -u'' + V(x) u on (lo+eps, hi-eps) with the
// wall offset eps = (hi-lo)/(10 n). The inverse-square walls make a naive
// eps = 0 grid first-order, so the offset shrinks with n and the level
// sequence is extrapolated with Aitken (order-agnostic).
inline std::vector<double> fd_lowest(const std::function<double(double)>& V, double lo,
                                     double hi, int n, int n_levels) {
    double eps = (hi - lo) / (10.0 * n);
    double a = lo + eps, b = hi - eps;
    double h = (b - a) / (n + 1);
    std::vector<double> diag(n), off(n - 1, -1.0 / (h * h));
    for (int j = 0; j < n; ++j) diag[j] = 2.0 / (h * h) + V(a + (j + 1) * h);
    return tridiag::lowest_eigenvalues(diag, off, n_levels);
}

inline std::vector<double> fd_extrapolated(const std::function<double(double)>& V,
                                           const GridSpec& grid, int n_levels) {
    std::vector<std::vector<double>> levels;
    for (int lev = 0; lev < grid.refinement_levels; ++lev)
        levels.push_back(fd_lowest(V, grid.lo, grid.hi, grid.n_points << lev, n_levels));

    std::vector<double> out(n_levels);
    const auto& last = levels.back();
    for (int m = 0; m < n_levels; ++m) {
        double e;
        if (levels.size() >= 3) {
            double e0 = levels[levels.size() - 3][m];
            double e1 = levels[levels.size() - 2][m];
            double e2 = last[m];
            double denom = (e2 - e1) - (e1 - e0);
            e = (denom == 0.0) ? e2 : e2 - (e2 - e1) * (e2 - e1) / denom;
        } else {
            // two levels: assume second order
            e = (4.0 * last[m] - levels[0][m]) / 3.0;
        }
        if (std::abs(e - last[m]) > 1e-3 * std::max(std::abs(e), 1.0))
            throw NonConvergenceError("finite-difference eigenvalue not grid-converged");
        out[m] = e;
    }
    return out;
}

} // namespace detail

/// Lowest n_levels eigenvalues of -d^2/dT^2 + alpha/sin^2 T + beta/cos^2 T
/// on (0, pi/2), Dirichlet walls. Analytic values are (2l + p_phi + p_psi + 1)^2.
inline std::vector<double> angular_eigenvalues(double alpha, double beta, int n_levels,
                                               const GridSpec& grid) {
    auto V = [alpha, beta](double t) {
        double s = std::sin(t), c = std::cos(t);
        return alpha / (s * s) + beta / (c * c);
    };
    return detail::fd_extrapolated(V, grid, n_levels);
}

inline GridSpec default_angular_grid(int n_points = 800) {
    return GridSpec(n_points, 0.0, M_PI / 2.0, 3);
}

/// Lowest n_levels eigenvalues of the half-line radial operator
/// -g'' + (lam_k^2 - 1/4)/r^2 + w^2 r^2 on (0, R), Dirichlet walls.
inline std::vector<double> radial_eigenvalues(double lam_k, double omega, int n_levels,
                                              const GridSpec& grid) {
    double coeff = lam_k * lam_k - 0.25;
    auto V = [coeff, omega](double r) { return coeff / (r * r) + omega * omega * r * r; };
    return detail::fd_extrapolated(V, grid, n_levels);
}

/// Radial grid whose outer wall satisfies w R^2 >= 4 E_target.
inline GridSpec default_radial_grid(double lam_k, double omega, int n_levels,
                                    int n_points = 800) {
    double e_target = 2.0 * omega * (2.0 * n_levels + lam_k + 1.0);
    double R = std::sqrt(4.0 * e_target / omega) + 2.0;
    return GridSpec(n_points, 0.0, R, 3);
}

/// Diagnostic report for the product-of-Bessels expansion. The left side is
/// J_mu(x) J_nu(y); the right side is the truncated l-sum evaluated under
/// both candidate coefficient denominators:
///   printed:   Gamma(mu+l+1) Gamma(mu+l+1)
///   symmetric: Gamma(mu+l+1) Gamma(nu+l+1)
/// with the shared numerator (-1)^l (mu+nu+2l+1) Gamma(mu+nu+l+1) l! and the
/// normalization 2 J_{mu+nu+2l+1}(z)/z, z = x + y, Theta = Phi.
struct BesselProductReport {
    double lhs = 0.0;
    double rhs_printed = 0.0;
    double rhs_symmetric = 0.0;
    double residual_printed = 0.0;
    double residual_symmetric = 0.0;
    std::vector<double> residual_by_l_printed;   // |partial sum - lhs| / |lhs|
    std::vector<double> residual_by_l_symmetric;
};

inline BesselProductReport bessel_product_identity_check(double p_phi, double p_psi, double x,
                                                         double y, int l1_max) {
    if (l1_max < 0 || l1_max > 40)
        throw std::invalid_argument("bessel_product_identity_check: l1_max must be in [0, 40]");
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("bessel_product_identity_check: arguments must be > 0");
    const double mu = p_phi, nu = p_psi;
    const double z = x + y;
    const double sin2 = x / z;       // sin^2 Theta, with Theta = Phi
    const double s = std::sqrt(sin2), c = std::sqrt(1.0 - sin2);
    const double x_jac = 1.0 - 2.0 * sin2;  // cos 2Theta

    BesselProductReport rep;
    rep.lhs = specfun::bessel_j(mu, x) * specfun::bessel_j(nu, y);

    const double dd_base = std::pow(s, mu) * std::pow(c, nu);
    double sum_p = 0.0, sum_s = 0.0;
    for (int l = 0; l <= l1_max; ++l) {
        double log_num = specfun::log_gamma(mu + nu + l + 1.0) + specfun::log_gamma(l + 1.0);
        double sign = (l % 2 == 0) ? 1.0 : -1.0;
        double order = mu + nu + 2.0 * l + 1.0;
        double d_val = dd_base * specfun::jacobi(l, mu, nu, x_jac);
        double shared = sign * order * d_val * d_val * 2.0 * specfun::bessel_j(order, z) / z;
        sum_p += shared * std::exp(log_num - 2.0 * specfun::log_gamma(mu + l + 1.0));
        sum_s += shared * std::exp(log_num - specfun::log_gamma(mu + l + 1.0) -
                                   specfun::log_gamma(nu + l + 1.0));
        rep.residual_by_l_printed.push_back(std::abs(sum_p - rep.lhs) / std::abs(rep.lhs));
        rep.residual_by_l_symmetric.push_back(std::abs(sum_s - rep.lhs) / std::abs(rep.lhs));
    }
    rep.rhs_printed = sum_p;
    rep.rhs_symmetric = sum_s;
    rep.residual_printed = rep.residual_by_l_printed.back();
    rep.residual_symmetric = rep.residual_by_l_symmetric.back();
    return rep;
}

/// Monotone tail decay of a partial-sum residual curve: the terms alternate
/// between even/odd l sublattices, so decay is required two steps apart,
/// above the roundoff floor set by the final residual.
inline bool residual_tail_decays(const std::vector<double>& residual_by_l) {
    if (residual_by_l.size() < 3) return true;
    double floor = std::max(10.0 * residual_by_l.back(), 1e-14);
    for (std::size_t l = 0; l + 2 < residual_by_l.size(); ++l)
        if (residual_by_l[l] > floor && residual_by_l[l + 2] > residual_by_l[l]) return false;
    return true;
}

/// Which Jacobi argument makes the angular factor an actual eigenfunction.
/// Decided by the pointwise ODE residual of
///   L^2 f = -f'' + (alpha/sin^2 + beta/cos^2) f   against   (2l+p+q+1)^2 f
/// with every derivative taken analytically.
struct AngularArgumentReport {
    double residual_cos_two_theta = 0.0;
    double residual_two_sin_sq = 0.0;
    AngularArgument winner = AngularArgument::cos_two_theta;
    bool distinguishable = true;  // false when alpha == beta (the two coincide up to sign)
};

namespace detail {

inline double angular_ode_residual(double alpha, double beta, int l, bool use_cos2t) {
    const double a = std::sqrt(alpha + 0.25), b = std::sqrt(beta + 0.25);
    const double lam = (2.0 * l + a + b + 1.0) * (2.0 * l + a + b + 1.0);
    const double A = a + 0.5, B = b + 0.5;
    double worst = 0.0;
    for (int i = 1; i <= 13; ++i) {
        double t = (M_PI / 2.0) * i / 14.0;
        double s = std::sin(t), c = std::cos(t);
        double x = use_cos2t ? std::cos(2.0 * t) : 2.0 * s * s - 1.0;
        double xp = use_cos2t ? -2.0 * std::sin(2.0 * t) : 2.0 * std::sin(2.0 * t);
        double xpp = use_cos2t ? -4.0 * std::cos(2.0 * t) : 4.0 * std::cos(2.0 * t);
        double P = specfun::jacobi(l, a, b, x);
        double Pp = specfun::jacobi_derivative(l, a, b, x);
        double Ppp = specfun::jacobi_second_derivative(l, a, b, x);
        double g = std::pow(s, A) * std::pow(c, B);
        double glog = A * c / s - B * s / c;                 // g'/g
        double gpp = g * (glog * glog - A / (s * s) - B / (c * c));
        double f = g * P;
        double fpp = gpp * P + 2.0 * g * glog * Pp * xp + g * (Ppp * xp * xp + Pp * xpp);
        double resid = -fpp + (alpha / (s * s) + beta / (c * c)) * f - lam * f;
        worst = std::max(worst, std::abs(resid) / (lam * std::max(std::abs(f), 1e-3)));
    }
    return worst;
}

} // namespace detail

inline AngularArgumentReport arbitrate_angular_argument(double alpha, double beta,
                                                        int l_max = 3) {
    AngularArgumentReport rep;
    for (int l = 1; l <= l_max; ++l) {
        rep.residual_cos_two_theta =
            std::max(rep.residual_cos_two_theta, detail::angular_ode_residual(alpha, beta, l, true));
        rep.residual_two_sin_sq =
            std::max(rep.residual_two_sin_sq, detail::angular_ode_residual(alpha, beta, l, false));
    }
    rep.distinguishable = std::abs(alpha - beta) > 1e-14;
    rep.winner = rep.residual_cos_two_theta <= rep.residual_two_sin_sq
                     ? AngularArgument::cos_two_theta
                     : AngularArgument::two_sin_sq_minus_one;
    return rep;
}

/// Spectrum-convention arbitration: compose the angular and radial
/// finite-difference oracles and score both closed forms against them.
struct SpectrumCase {
    double alpha = 0.0, beta = 0.0;
    Rational k{1, 1};
    int l1 = 0;
    std::vector<double> oracle_energies;
    double max_rel_err_reference = 0.0;
    double max_rel_err_resolved = 0.0;
};

struct SpectrumArbitration {
    std::vector<SpectrumCase> cases;
    double max_rel_err_reference = 0.0;
    double max_rel_err_resolved = 0.0;
    bool conclusive = false;
    SpectrumConvention winner = SpectrumConvention::resolved;
};

inline SpectrumArbitration arbitrate_spectrum_convention(
    const std::vector<double>& alphas, const std::vector<double>& betas,
    const std::vector<Rational>& ks, double omega = 1.0, int l1_max = 2, int n_radial = 5,
    int n_points = 800, double tolerance = 1e-3) {
    SpectrumArbitration arb;
    for (double alpha : alphas) {
        for (double beta : betas) {
            auto ang = angular_eigenvalues(alpha, beta, l1_max + 1,
                                           default_angular_grid(n_points));
            for (const Rational& k : ks) {
                for (int l1 = 0; l1 <= l1_max; ++l1) {
                    SpectrumCase sc;
                    sc.alpha = alpha;
                    sc.beta = beta;
                    sc.k = k;
                    sc.l1 = l1;
                    double lam_k = k.value() * std::sqrt(ang[l1]);
                    sc.oracle_energies = radial_eigenvalues(
                        lam_k, omega, n_radial,
                        default_radial_grid(lam_k, omega, n_radial, n_points));
                    double p = std::sqrt(alpha + 0.25), q = std::sqrt(beta + 0.25);
                    double lam = 2.0 * l1 + p + q + 1.0;
                    for (int n = 0; n < n_radial; ++n) {
                        double e_ref = 2.0 * lam * k.value() + 2.0 * n;
                        double e_res = 2.0 * omega * (2.0 * n + k.value() * lam + 1.0);
                        double e_orc = sc.oracle_energies[n];
                        sc.max_rel_err_reference = std::max(
                            sc.max_rel_err_reference, std::abs(e_ref - e_orc) / std::abs(e_orc));
                        sc.max_rel_err_resolved = std::max(
                            sc.max_rel_err_resolved, std::abs(e_res - e_orc) / std::abs(e_orc));
                    }
                    arb.max_rel_err_reference =
                        std::max(arb.max_rel_err_reference, sc.max_rel_err_reference);
                    arb.max_rel_err_resolved =
                        std::max(arb.max_rel_err_resolved, sc.max_rel_err_resolved);
                    arb.cases.push_back(std::move(sc));
                }
            }
        }
    }
    bool ref_ok = arb.max_rel_err_reference <= tolerance;
    bool res_ok = arb.max_rel_err_resolved <= tolerance;
    arb.conclusive = (ref_ok != res_ok);
    arb.winner = res_ok ? SpectrumConvention::resolved : SpectrumConvention::reference;
    return arb;
}

} // namespace ttw::oracle
