#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ttw/params.hpp"
#include "ttw/quadrature.hpp"
#include "ttw/rational.hpp"
#include "ttw/specfun.hpp"

namespace ttw::spectrum {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Combined angular quantum number entering every radial formula:
/// Lambda = k (2 l1 + p_phi + p_psi + 1).
inline double radial_exponent(int l1, const PotentialParams& params) {
    return params.k_value() * (2.0 * l1 + params.p_phi() + params.p_psi() + 1.0);
}

/// Energy of level (n_r, l1) under the requested convention.
///  reference: 2 (2l1 + p_phi + p_psi + 1) k + 2 n_r      (no omega factor)
///  resolved:  2 omega (2 n_r + k (2l1 + p_phi + p_psi + 1) + 1)
inline double energy(const QuantumNumbers& qn, const PotentialParams& params,
                     SpectrumConvention convention = SpectrumConvention::resolved) {
    double lam = 2.0 * qn.l1 + params.p_phi() + params.p_psi() + 1.0;
    if (convention == SpectrumConvention::reference)
        return 2.0 * lam * params.k_value() + 2.0 * qn.n_r;
    return 2.0 * params.omega * (2.0 * qn.n_r + params.k_value() * lam + 1.0);
}

/// Angular factor of the eigenstate:
/// (sin k th)^(p_phi+1/2) (cos k th)^(p_psi+1/2) P_l1^(p_phi,p_psi)(x*)
/// with x* = cos(2 k th) by default (the oracle-selected convention).
/// Evaluation at the walls returns the analytic limit 0.
inline double angular_wavefunction(int l1, double theta, const PotentialParams& params,
                                   AngularArgument arg = AngularArgument::cos_two_theta) {
    if (l1 < 0) throw std::domain_error("angular_wavefunction: l1 must be >= 0");
    if (!(theta >= 0.0) || !(theta <= params.theta_max() * (1.0 + 1e-12)))
        throw std::domain_error("angular_wavefunction: theta outside [0, pi/(2k)]");
    if (theta <= 0.0 || theta >= params.theta_max()) return 0.0;  // wall limit
    double kt = params.k_value() * theta;
    double s = std::sin(kt), c = std::cos(kt);
    if (s <= 0.0 || c <= 0.0) return 0.0;
    double x = (arg == AngularArgument::cos_two_theta) ? std::cos(2.0 * kt)
                                                       : 2.0 * s * s - 1.0;
    double a = params.p_phi(), b = params.p_psi();
    return std::pow(s, a + 0.5) * std::pow(c, b + 0.5) * specfun::jacobi(l1, a, b, x);
}

/// Unnormalized eigenstate amplitude at (r, theta):
/// angular factor * exp(-w r^2/2) (w r^2)^(Lambda/2) L_{n_r}^(Lambda)(w r^2).
inline double eigenstate(const QuantumNumbers& qn, const PotentialParams& params, double r,
                         double theta, AngularArgument arg = AngularArgument::cos_two_theta) {
    if (!(r >= 0.0)) throw std::domain_error("eigenstate: r must be >= 0");
    double ang = angular_wavefunction(qn.l1, theta, params, arg);
    if (ang == 0.0) return 0.0;
    double x = params.omega * r * r;
    if (x == 0.0) return 0.0;
    double lam_k = radial_exponent(qn.l1, params);
    double radial = std::exp(-0.5 * x + 0.5 * lam_k * std::log(x)) *
                    specfun::laguerre(qn.n_r, lam_k, x);
    return ang * radial;
}

namespace detail {

// Radial piece of <psi_a | psi_b>: (1/2w) Int e^-x x^((La+Lb)/2) L_na L_nb dx
inline double radial_overlap(int n_a, double lam_a, int n_b, double lam_b, double omega,
                             const quad::Rule& gl) {
    double half = 0.5 * (lam_a + lam_b);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        double x = gl.x[i];
        acc += gl.w[i] * std::exp(half * std::log(x)) * specfun::laguerre(n_a, lam_a, x) *
               specfun::laguerre(n_b, lam_b, x);
    }
    return acc / (2.0 * omega);
}

inline double angular_overlap(int l_a, int l_b, const PotentialParams& params,
                              AngularArgument arg, const quad::Rule& leg) {
    double acc = 0.0;
    for (std::size_t i = 0; i < leg.x.size(); ++i)
        acc += leg.w[i] * angular_wavefunction(l_a, leg.x[i], params, arg) *
               angular_wavefunction(l_b, leg.x[i], params, arg);
    return acc;
}

} // namespace detail

/// <psi_a | psi_b> over measure r dr dth (unnormalized states), evaluated by
/// Gauss-Laguerre x Gauss-Legendre quadrature of the separated factors.
inline double eigenstate_inner_product(const QuantumNumbers& a, const QuantumNumbers& b,
                                       const PotentialParams& params, int radial_order = 128,
                                       int angular_order = 128,
                                       AngularArgument arg = AngularArgument::cos_two_theta) {
    quad::Rule gl = quad::gauss_laguerre(radial_order);
    quad::Rule leg = quad::gauss_legendre(angular_order, 0.0, params.theta_max());
    double lam_a = radial_exponent(a.l1, params), lam_b = radial_exponent(b.l1, params);
    return detail::radial_overlap(a.n_r, lam_a, b.n_r, lam_b, params.omega, gl) *
           detail::angular_overlap(a.l1, b.l1, params, arg, leg);
}

/// Normalization constant c with Int |c psi|^2 r dr dth = 1. Computed at the
/// given order and at twice the order; throws QuadratureError if the two
/// disagree beyond 1e-8 relative.
inline double norm_constant(const QuantumNumbers& qn, const PotentialParams& params,
                            int order = 128,
                            AngularArgument arg = AngularArgument::cos_two_theta) {
    double n1 = eigenstate_inner_product(qn, qn, params, order, order, arg);
    double n2 = eigenstate_inner_product(qn, qn, params, 2 * order, 2 * order, arg);
    if (!(n2 > 0.0) || std::abs(n1 - n2) > 1e-8 * std::abs(n2))
        throw QuadratureError("norm_constant: quadrature did not converge at doubled order");
    return 1.0 / std::sqrt(n2);
}

/// One enumerated level: quantum numbers, energy, optional exact-rational
/// energy, and its degeneracy class.
struct EnergyLevel {
    QuantumNumbers qn;
    double energy = 0.0;
    bool has_exact = false;
    Rational energy_exact{0, 1};
    int class_id = -1;
    int class_size = 1;
};

namespace detail {

// exact key proportional to the energy (common positive factors dropped):
//  resolved:  2 n_r + k (2 l1 + c) + 1, reference: k (2 l1 + c) + n_r
inline Rational exact_key(const QuantumNumbers& qn, const Rational& k, const Rational& c,
                          SpectrumConvention convention) {
    Rational lam = k * (Rational(2 * qn.l1) + c);
    if (convention == SpectrumConvention::reference) return lam + Rational(qn.n_r);
    return Rational(2 * qn.n_r) + lam + Rational(1);
}

} // namespace detail

/// All levels with E <= e_max, ascending in energy (ties by n_r), grouped
/// into equal-energy classes. Grouping is exact-rational whenever the wall
/// exponents are rational; otherwise a 1e-12 relative tolerance applies.
inline std::vector<EnergyLevel> enumerate_levels(
    const PotentialParams& params, double e_max,
    SpectrumConvention convention = SpectrumConvention::resolved) {
    std::vector<EnergyLevel> levels;

    Rational pphi, ppsi, omega_rat;
    bool exact = params.p_phi_exact(pphi) && params.p_psi_exact(ppsi);
    bool omega_exact = Rational::from_double_exact(params.omega, omega_rat);
    Rational c = exact ? pphi + ppsi + Rational(1) : Rational(0);

    for (int l1 = 0;; ++l1) {
        QuantumNumbers base(0, l1);
        if (energy(base, params, convention) > e_max) break;
        for (int n_r = 0;; ++n_r) {
            QuantumNumbers qn(n_r, l1);
            double e = energy(qn, params, convention);
            if (e > e_max) break;
            EnergyLevel lvl;
            lvl.qn = qn;
            lvl.energy = e;
            if (exact) {
                Rational key = detail::exact_key(qn, params.k, c, convention);
                if (convention == SpectrumConvention::reference) {
                    lvl.has_exact = true;
                    lvl.energy_exact = Rational(2) * key;
                } else if (omega_exact) {
                    lvl.has_exact = true;
                    lvl.energy_exact = Rational(2) * omega_rat * key;
                }
            }
            levels.push_back(lvl);
        }
    }

    std::sort(levels.begin(), levels.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.qn.n_r != b.qn.n_r) return a.qn.n_r < b.qn.n_r;
        return a.qn.l1 < b.qn.l1;
    });

    // partition into equal-energy classes
    int next_id = 0;
    std::size_t i = 0;
    while (i < levels.size()) {
        std::size_t j = i + 1;
        while (j < levels.size()) {
            bool same;
            if (exact) {
                Rational ki = detail::exact_key(levels[i].qn, params.k, c, convention);
                Rational kj = detail::exact_key(levels[j].qn, params.k, c, convention);
                same = (ki == kj);
            } else {
                same = std::abs(levels[j].energy - levels[i].energy) <=
                       1e-12 * std::max(std::abs(levels[i].energy), 1.0);
            }
            if (!same) break;
            ++j;
        }
        for (std::size_t m = i; m < j; ++m) {
            levels[m].class_id = next_id;
            levels[m].class_size = static_cast<int>(j - i);
        }
        ++next_id;
        i = j;
    }
    return levels;
}

} // namespace ttw::spectrum
