#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ttw/rational.hpp"

namespace ttw {

/// Which closed form the energy operations evaluate. `reference` is the
/// linear-in-n form printed in the source literature; `resolved` is the
/// 2-D radial-oscillator ladder 2w(2n_r + k(2l1+p_phi+p_psi+1) + 1). The
/// validation oracle arbitrates which one matches the finite-difference
/// spectrum; `resolved` is the arbitrated default (see oracle module).
enum class SpectrumConvention { reference, resolved };

/// Argument passed to the angular Jacobi polynomial. The two candidates
/// differ by the sign of the argument; the angular oracle selects
/// `cos_two_theta` (the other is not an eigenfunction when alpha != beta).
enum class AngularArgument { cos_two_theta, two_sin_sq_minus_one };

/// Potential constants of H = p_r^2 + p_th^2/r^2 + w^2 r^2
///   + (alpha k^2 / sin^2(k th) + beta k^2 / cos^2(k th)) / r^2
/// on the wedge th in [0, pi/(2k)], r >= 0. k is kept as an exact rational
/// because spectrum degeneracy and orbit closure are rationality-sensitive.
struct PotentialParams {
    double omega = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    Rational k{1, 1};

    PotentialParams() = default;
    PotentialParams(double omega_, double alpha_, double beta_, Rational k_)
        : omega(omega_), alpha(alpha_), beta(beta_), k(k_) {
        if (!(omega > 0.0)) throw std::domain_error("PotentialParams: omega must be > 0");
        if (!(alpha >= 0.0) || !(beta >= 0.0))
            throw std::domain_error("PotentialParams: alpha, beta must be >= 0");
        if (k.num() < 1 || k.den() < 1)
            throw std::domain_error("PotentialParams: k must be a positive rational");
    }

    double k_value() const { return k.value(); }

    /// Upper wall of the angular wedge, pi/(2k).
    double theta_max() const { return M_PI / (2.0 * k_value()); }

    /// Wall exponents p_phi = sqrt(alpha + 1/4), p_psi = sqrt(beta + 1/4).
    double p_phi() const { return std::sqrt(alpha + 0.25); }
    double p_psi() const { return std::sqrt(beta + 0.25); }

    /// Exact rational wall exponent, when alpha + 1/4 happens to be the
    /// square of a rational (alpha itself reconstructible from the double).
    bool p_phi_exact(Rational& out) const { return exact_exponent(alpha, out); }
    bool p_psi_exact(Rational& out) const { return exact_exponent(beta, out); }

private:
    static bool exact_exponent(double c, Rational& out) {
        Rational cr;
        if (!Rational::from_double_exact(c, cr)) return false;
        return (cr + Rational(1, 4)).sqrt_exact(out);
    }
};

/// (n_r, l1) labels of an eigenstate: radial node count and angular index.
struct QuantumNumbers {
    int n_r = 0;
    int l1 = 0;

    QuantumNumbers() = default;
    QuantumNumbers(int n_r_, int l1_) : n_r(n_r_), l1(l1_) {
        if (n_r < 0 || l1 < 0) throw std::domain_error("QuantumNumbers: indices must be >= 0");
    }
};

inline std::pair<double, double> angular_exponent_pair(const PotentialParams& params) {
    return {params.p_phi(), params.p_psi()};
}

} // namespace ttw
