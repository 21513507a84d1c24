#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ttw/params.hpp"
#include "ttw/quadrature.hpp"
#include "ttw/specfun.hpp"
#include "ttw/spectrum.hpp"

namespace ttw::coherent {

using complexd = std::complex<double>;

struct InfeasibleCharges : std::runtime_error {
    double min_feasible_e_target;
    InfeasibleCharges(const std::string& what, double min_e)
        : std::runtime_error(what), min_feasible_e_target(min_e) {}
};

struct ConstraintViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lowering-operator eigenvalues of the four oscillators at t = 0. Time
/// evolution is the pure phase kappa_i(t) = kappa_i(0) e^(-2 i w t).
struct OscillatorAmplitudes {
    complexd kappa1, kappa2, lambda1, lambda2;
    double omega = 1.0;

    /// Sum of the four |amplitude|^2 (written S below).
    double moduli_sum() const {
        return std::norm(kappa1) + std::norm(kappa2) + std::norm(lambda1) + std::norm(lambda2);
    }
    /// kappa^2(0) = kappa1^2 + kappa2^2 (a complex invariant of the u-pair).
    complexd kappa_pair_sq() const { return kappa1 * kappa1 + kappa2 * kappa2; }
    complexd lambda_pair_sq() const { return lambda1 * lambda1 + lambda2 * lambda2; }
};

inline OscillatorAmplitudes evolve(const OscillatorAmplitudes& a, double t) {
    complexd phase = std::exp(complexd(0.0, -2.0 * a.omega * t));
    return {a.kappa1 * phase, a.kappa2 * phase, a.lambda1 * phase, a.lambda2 * phase, a.omega};
}

/// Quantities invariant under the amplitude phase evolution.
struct ConservedCharges {
    double L12 = 0.0;                 // -Im(kappa1 conj(kappa2))
    double L34 = 0.0;
    double energy_over_omega = 0.0;   // S / 2
    complexd kappa_sq;                // kappa^2(0) + lambda^2(0)
    double delta = 0.0;               // arg(kappa_sq) / 2
    complexd K0, Lambda0;
    bool K0_defined = false;          // false when the radicand denominator vanishes
    bool Lambda0_defined = false;
};

inline ConservedCharges charges_from_amplitudes(const OscillatorAmplitudes& a) {
    ConservedCharges c;
    c.L12 = -std::imag(a.kappa1 * std::conj(a.kappa2));
    c.L34 = -std::imag(a.lambda1 * std::conj(a.lambda2));
    c.energy_over_omega = 0.5 * a.moduli_sum();
    c.kappa_sq = a.kappa_pair_sq() + a.lambda_pair_sq();
    c.delta = 0.5 * std::arg(c.kappa_sq);
    complexd du = a.kappa2 - complexd(0, 1) * a.kappa1;
    complexd dv = a.lambda2 - complexd(0, 1) * a.lambda1;
    c.K0_defined = std::abs(du) > 0.0;
    c.Lambda0_defined = std::abs(dv) > 0.0;
    if (c.K0_defined) c.K0 = std::sqrt((a.kappa2 + complexd(0, 1) * a.kappa1) / du);
    if (c.Lambda0_defined) c.Lambda0 = std::sqrt((a.lambda2 + complexd(0, 1) * a.lambda1) / dv);
    return c;
}

/// TTW mechanical energy of the orbit matched to these amplitudes: E = w S.
inline double mechanical_energy(const OscillatorAmplitudes& a) {
    return a.omega * a.moduli_sum();
}

/// Conserved angular charge A = k^2 L^2 of the matched orbit:
/// A = (S^2 - |kappa^2(0) + lambda^2(0)|^2) / 4.
inline double angular_charge(const OscillatorAmplitudes& a) {
    double s = a.moduli_sum();
    return 0.25 * (s * s - std::norm(a.kappa_pair_sq() + a.lambda_pair_sq()));
}

/// Build amplitudes satisfying the charge constraints
///   L12 = k sqrt(alpha + 1/4),  L34 = k sqrt(beta + 1/4),
///   energy_over_omega = E_target / omega,
/// with the symmetric magnitude choice |kappa1| = |kappa2| within each pair
/// and overall pair phases phase_u, phase_v. split in (0,1) is the u-pair's
/// share of the energy.
inline OscillatorAmplitudes constrain_amplitudes(double E_target, const PotentialParams& params,
                                                 double phase_u = 0.0, double phase_v = 0.0,
                                                 double split = 0.5) {
    if (!(split > 0.0) || !(split < 1.0))
        throw std::domain_error("constrain_amplitudes: split must be in (0,1)");
    double k = params.k_value();
    double target_u = k * params.p_phi();
    double target_v = k * params.p_psi();
    double S = 2.0 * E_target / params.omega;
    double Su = split * S, Sv = (1.0 - split) * S;
    if (0.5 * Su < target_u || 0.5 * Sv < target_v) {
        double min_e = params.omega *
                       std::max(target_u / split, target_v / (1.0 - split));
        throw InfeasibleCharges("constrain_amplitudes: charge constraints unsatisfiable; "
                                "minimal feasible E_target = " + std::to_string(min_e),
                                min_e);
    }
    // L12 = -|k1 k2| sin(phi1 - phi2) with |k1 k2| = Su/2
    double eta_u = std::asin(-target_u / (0.5 * Su));
    double eta_v = std::asin(-target_v / (0.5 * Sv));
    double Ku = std::sqrt(0.5 * Su), Kv = std::sqrt(0.5 * Sv);
    OscillatorAmplitudes a;
    a.omega = params.omega;
    a.kappa1 = Ku * std::exp(complexd(0.0, phase_u + 0.5 * eta_u));
    a.kappa2 = Ku * std::exp(complexd(0.0, phase_u - 0.5 * eta_u));
    a.lambda1 = Kv * std::exp(complexd(0.0, phase_v + 0.5 * eta_v));
    a.lambda2 = Kv * std::exp(complexd(0.0, phase_v - 0.5 * eta_v));
    return a;
}

/// <u>^2_t under the constraint L12^2 = alpha + 1/4:
/// (|k1|^2+|k2|^2)/2 + sqrt([(|k1|^2+|k2|^2)/2]^2 - (alpha+1/4)) cos(4wt - 2phi).
inline double expectation_u2(const OscillatorAmplitudes& a, double t, double alpha) {
    double L12 = -std::imag(a.kappa1 * std::conj(a.kappa2));
    if (std::abs(L12 * L12 - (alpha + 0.25)) > 1e-10)
        throw ConstraintViolation("expectation_u2: requires L12^2 = alpha + 1/4");
    double Su = std::norm(a.kappa1) + std::norm(a.kappa2);
    double bracket = 0.25 * Su * Su - (alpha + 0.25);
    double amp = std::sqrt(std::max(bracket, 0.0));
    double two_phi = std::arg(a.kappa_pair_sq());
    return 0.5 * Su + amp * std::cos(4.0 * a.omega * t - two_phi);
}

/// Mirror of expectation_u2 for the v-pair (lambda, chi, beta).
inline double expectation_v2(const OscillatorAmplitudes& a, double t, double beta) {
    double L34 = -std::imag(a.lambda1 * std::conj(a.lambda2));
    if (std::abs(L34 * L34 - (beta + 0.25)) > 1e-10)
        throw ConstraintViolation("expectation_v2: requires L34^2 = beta + 1/4");
    double Sv = std::norm(a.lambda1) + std::norm(a.lambda2);
    double bracket = 0.25 * Sv * Sv - (beta + 0.25);
    double amp = std::sqrt(std::max(bracket, 0.0));
    double two_chi = std::arg(a.lambda_pair_sq());
    return 0.5 * Sv + amp * std::cos(4.0 * a.omega * t - two_chi);
}

/// <r>^2_t = E/(2w^2) + sqrt((E/(2w^2))^2 - A/w^2) sin(4w(t - t0)).
/// E is the mechanical orbit energy and A the conserved angular charge;
/// the oscillation period is pi/(2w).
inline double expectation_r2(double E, double A, double omega, double t, double t0) {
    double mean = E / (2.0 * omega * omega);
    double radicand = mean * mean - A / (omega * omega);
    if (radicand < -1e-12 * mean * mean)
        throw std::domain_error("expectation_r2: (E/(2w^2))^2 < A/w^2 (unphysical charges)");
    double amp = std::sqrt(std::max(radicand, 0.0));
    return mean + amp * std::sin(4.0 * omega * (t - t0));
}

/// Reference time t0 that aligns expectation_r2 with the amplitude set:
/// w <r^2>(t) = S/2 + (|kappa_sq|/2) cos(4wt - 2 delta).
inline double r2_reference_time(const OscillatorAmplitudes& a) {
    ConservedCharges c = charges_from_amplitudes(a);
    return (2.0 * c.delta - 0.5 * M_PI) / (4.0 * a.omega);
}

/// <sin Theta>^2_t = <u>^2_t / (w <r>^2_t), evaluated with the k-rescaled
/// charges carried by the amplitudes (L12 = k sqrt(alpha+1/4) after
/// constrain_amplitudes). Always lies in (0, 1).
inline double expectation_sin2_theta(const OscillatorAmplitudes& a,
                                     const PotentialParams& params, double t) {
    double k = params.k_value();
    double L12 = -std::imag(a.kappa1 * std::conj(a.kappa2));
    double target = k * params.p_phi();
    if (std::abs(L12 - target) > 1e-10 * std::max(1.0, std::abs(target)))
        throw ConstraintViolation("expectation_sin2_theta: requires L12 = k sqrt(alpha+1/4)");
    double Su = std::norm(a.kappa1) + std::norm(a.kappa2);
    double bracket = 0.25 * Su * Su - L12 * L12;
    double u2 = 0.5 * Su + std::sqrt(std::max(bracket, 0.0)) *
                               std::cos(4.0 * a.omega * t - std::arg(a.kappa_pair_sq()));
    double E = mechanical_energy(a);
    double A = angular_charge(a);
    double r2 = expectation_r2(E, A, a.omega, t, r2_reference_time(a));
    if (!(r2 > 0.0)) throw std::domain_error("expectation_sin2_theta: vanishing <r^2>");
    return u2 / (a.omega * r2);
}

/// Caps and tail tolerance for the truncated double series.
struct SeriesTruncation {
    int l1_max = 24;
    int nr_max = 48;
    double tail_tol = 1e-8;

    SeriesTruncation() = default;
    SeriesTruncation(int l1_max_, int nr_max_, double tail_tol_)
        : l1_max(l1_max_), nr_max(nr_max_), tail_tol(tail_tol_) {
        if (l1_max < 1 || nr_max < 1)
            throw std::domain_error("SeriesTruncation: caps must be >= 1");
        if (!(tail_tol > 0.0)) throw std::domain_error("SeriesTruncation: tail_tol must be > 0");
    }
};

/// Truncated conserved-charge coherent state of the TTW system:
///   Psi(r,th; t) = N sum_l1 sum_nr  c_{l1,nr}(t) psi_{nr,l1}(r,th)
/// with time dependence c(t) = c(0) exp(-4 i w t (Lambda_l/2 + nr + 1)) and
///   c_{l1,nr}(0) = C_l1 d_l1(cos 2Phi) w0^(Lambda_l/2 + nr) / Gamma(nr+Lambda_l+1),
///   w0 = -(kappa^2(0)+lambda^2(0))/4,  Lambda_l = k (2 l1 + p_phi + p_psi + 1),
/// C_l1 the coefficient for which the Bessel-product expansion closes (the
/// symmetric-Gamma form selected by the oracle). N is fixed numerically so
/// the truncated state has unit norm; |Psi|^2 and every expectation value
/// are insensitive to the global phase conventions left open upstream.
class CoherentEvaluator {
public:
    struct Coefficient {
        int l1 = 0;
        int n_r = 0;
        complexd value;  // normalized coefficient at t = 0
    };

    struct EvalResult {
        complexd value;
        double last_shell_ratio = 0.0;  // |last l1 shell| / sum of shell magnitudes
    };

    CoherentEvaluator(const OscillatorAmplitudes& amplitudes, const PotentialParams& params,
                      const SeriesTruncation& trunc = {}, int norm_quad_order = 96)
        : params_(params), trunc_(trunc), omega_(params.omega) {
        if (std::abs(amplitudes.omega - params.omega) > 1e-12 * params.omega)
            throw std::invalid_argument("CoherentEvaluator: amplitude/params omega mismatch");
        build_coefficients(amplitudes);
        normalize(norm_quad_order);
        build_r2_moments(norm_quad_order);
    }

    /// <r^2> of the truncated state at time t, from the coefficient table and
    /// quadrature matrix elements of r^2 in the eigenbasis. This is the
    /// series route; it carries the zero-point content that the closed-form
    /// trajectory moment deliberately neglects.
    double expectation_r2_series(double t) const {
        complexd osc = r2_offdiag_ * std::exp(complexd(0.0, -4.0 * omega_ * t));
        return r2_diag_ + 2.0 * osc.real();
    }

    /// Complex amplitude of the normalized state; throws TruncationError when
    /// the last retained l1 shell exceeds tail_tol of the running sum.
    complexd evaluate(double t, double r, double theta) const {
        EvalResult res = evaluate_with_tail(t, r, theta);
        if (res.last_shell_ratio > trunc_.tail_tol)
            throw TruncationError("coherent_eval: last l1 shell exceeds tail tolerance");
        return res.value;
    }

    EvalResult evaluate_with_tail(double t, double r, double theta) const {
        EvalResult res;
        if (!(r >= 0.0)) throw std::domain_error("coherent_eval: r must be >= 0");
        double x = omega_ * r * r;
        complexd total = 0.0;
        double mag_sum = 0.0, last_mag = 0.0;
        for (int l = 0; l <= trunc_.l1_max; ++l) {
            double ang = spectrum::angular_wavefunction(l, theta, params_);
            double lam = lambda_[l];
            complexd shell = 0.0;
            if (ang != 0.0 && x > 0.0) {
                double radial_base = std::exp(-0.5 * x + 0.5 * lam * std::log(x));
                // Laguerre values by recurrence while accumulating the n sum
                double p0 = 1.0, p1 = 1.0 + lam - x;
                for (int n = 0; n <= trunc_.nr_max; ++n) {
                    double L = (n == 0) ? p0 : p1;
                    if (n >= 1) {
                        double p2 = ((2.0 * n + 1.0 + lam - x) * p1 - (n + lam) * p0) / (n + 1.0);
                        p0 = p1;
                        p1 = p2;
                    }
                    shell += coeff_[index(l, n)] * time_phase(t, l, n) * (radial_base * L);
                }
                shell *= ang;
            }
            total += shell;
            last_mag = std::abs(shell);
            mag_sum += last_mag;
        }
        res.value = total * std::exp(complexd(0.0, -4.0 * omega_ * t));
        res.last_shell_ratio = mag_sum > 0.0 ? last_mag / mag_sum : 0.0;
        return res;
    }

    /// Normalized t = 0 coefficients, exportable as CSV (l1, n_r, re, im).
    std::vector<Coefficient> coefficient_table() const {
        std::vector<Coefficient> out;
        out.reserve(coeff_.size());
        for (int l = 0; l <= trunc_.l1_max; ++l)
            for (int n = 0; n <= trunc_.nr_max; ++n)
                out.push_back({l, n, coeff_[index(l, n)]});
        return out;
    }

    /// Coefficient of the (unnormalized) eigenstate psi_{nr,l1} at time t.
    complexd coefficient(int l1, int n_r, double t = 0.0) const {
        if (l1 < 0 || l1 > trunc_.l1_max || n_r < 0 || n_r > trunc_.nr_max)
            throw std::out_of_range("coefficient: index outside the truncation");
        return coeff_[index(l1, n_r)] * time_phase(t, l1, n_r);
    }

    double norm_factor() const { return norm_factor_; }
    const PotentialParams& params() const { return params_; }
    const SeriesTruncation& truncation() const { return trunc_; }
    complexd pair_sq_sum() const { return kappa_sq_; }

private:
    PotentialParams params_;
    SeriesTruncation trunc_;
    double omega_;
    complexd kappa_sq_;                 // kappa^2(0) + lambda^2(0)
    std::vector<double> lambda_;        // Lambda_l per shell
    std::vector<complexd> coeff_;       // normalized c_{l,n}(0)
    double norm_factor_ = 1.0;
    double r2_diag_ = 0.0;              // time-independent part of <r^2>
    complexd r2_offdiag_;               // coefficient of e^(-4 i w t)

    std::size_t index(int l, int n) const {
        return static_cast<std::size_t>(l) * (trunc_.nr_max + 1) + n;
    }

    complexd time_phase(double t, int l, int n) const {
        // w(t)^s = w(0)^s e^(-4 i w t s), s = Lambda_l/2 + n
        double s = 0.5 * lambda_[l] + n;
        return std::exp(complexd(0.0, -4.0 * omega_ * t * s));
    }

    void build_coefficients(const OscillatorAmplitudes& a) {
        const double mu = params_.p_phi(), nu = params_.p_psi();
        complexd ksq = a.kappa_pair_sq(), lsq = a.lambda_pair_sq();
        kappa_sq_ = ksq + lsq;
        lambda_.resize(trunc_.l1_max + 1);
        for (int l = 0; l <= trunc_.l1_max; ++l)
            lambda_[l] = params_.k_value() * (2.0 * l + mu + nu + 1.0);
        if (std::abs(kappa_sq_) < 1e-12 * std::max(a.moduli_sum(), 1e-300)) {
            // circular charges: every coefficient carries a positive power of
            // w0 = 0; the normalized w0 -> 0 limit is the ground eigenstate,
            // whose coefficient has the smallest such power
            kappa_sq_ = 0.0;
            coeff_.assign(static_cast<std::size_t>(trunc_.l1_max + 1) * (trunc_.nr_max + 1), 0.0);
            coeff_[index(0, 0)] = 1.0;
            return;
        }
        complexd w0 = -0.25 * kappa_sq_;
        complexd sigma_sq = kappa_sq_;
        // d_l(cos 2Phi) with sin Phi = kappa/sigma, cos Phi = lambda/sigma
        complexd sin_phi_sq = ksq / sigma_sq;
        complexd cos_phi_sq = lsq / sigma_sq;
        complexd cos_two_phi = cos_phi_sq - sin_phi_sq;
        complexd log_sin = 0.5 * std::log(sin_phi_sq);
        complexd log_cos = 0.5 * std::log(cos_phi_sq);
        complexd log_w0 = std::log(w0);

        coeff_.assign(static_cast<std::size_t>(trunc_.l1_max + 1) * (trunc_.nr_max + 1), 0.0);
        for (int l = 0; l <= trunc_.l1_max; ++l) {
            double lam = lambda_[l];
            double sign = (l % 2 == 0) ? 1.0 : -1.0;
            double log_cl = std::log(2.0 * l + mu + nu + 1.0) +
                            specfun::log_gamma(mu + nu + l + 1.0) +
                            specfun::log_gamma(l + 1.0) - specfun::log_gamma(mu + l + 1.0) -
                            specfun::log_gamma(nu + l + 1.0);
            complexd d_phi = std::exp(mu * log_sin + nu * log_cos) *
                             specfun::jacobi(l, mu, nu, cos_two_phi);
            for (int n = 0; n <= trunc_.nr_max; ++n) {
                complexd log_term = (0.5 * lam + n) * log_w0;
                double log_gamma_den = specfun::log_gamma(n + lam + 1.0);
                coeff_[index(l, n)] =
                    sign * d_phi * std::exp(log_term + complexd(log_cl - log_gamma_den, 0.0));
            }
        }
    }

    void normalize(int order) {
        // || Psi ||^2 = sum |c_{l,n}|^2 ||psi_{l,n}||^2 in exact arithmetic,
        // but the shipped normalization integrates |Psi|^2 on a
        // Gauss-Laguerre x Gauss-Legendre grid, so it also covers the series
        // assembly itself.
        quad::Rule gl = quad::gauss_laguerre(order);
        quad::Rule leg = quad::gauss_legendre(order, 0.0, params_.theta_max());
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < leg.x.size(); ++j) {
                // |Psi|^2 carries e^-x; the Laguerre weight already includes
                // it, so evaluate with the Gaussian factor stripped
                complexd val = evaluate_unweighted(leg.x[j], gl.x[i]);
                row += leg.w[j] * std::norm(val);
            }
            acc += gl.w[i] * row / (2.0 * omega_);
        }
        if (!(acc > 0.0))
            throw std::domain_error("CoherentEvaluator: vanishing norm (degenerate charges)");
        norm_factor_ = 1.0 / std::sqrt(acc);
        for (auto& c : coeff_) c *= norm_factor_;
    }

    void build_r2_moments(int order) {
        // <psi_{l,n}| r^2 |psi_{l,n'}> = A_l /(2 w^2) Int e^-x x^(Lam+1) L_n L_n' dx;
        // r^2 couples only n' = n, n +/- 1, so <r^2>(t) collapses to a mean
        // plus one e^(-4 i w t) harmonic
        quad::Rule leg = quad::gauss_legendre(order, 0.0, params_.theta_max());
        quad::Rule gl = quad::gauss_laguerre(order);
        const int nmax = trunc_.nr_max;
        r2_diag_ = 0.0;
        r2_offdiag_ = 0.0;
        std::vector<double> lag_table(nmax + 1);
        for (int l = 0; l <= trunc_.l1_max; ++l) {
            double a_l = 0.0;
            for (std::size_t j = 0; j < leg.x.size(); ++j) {
                double ang = spectrum::angular_wavefunction(l, leg.x[j], params_);
                a_l += leg.w[j] * ang * ang;
            }
            double lam = lambda_[l];
            std::vector<double> diag(nmax + 1, 0.0), off(nmax + 1, 0.0);
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                double x = gl.x[i];
                double wgt = gl.w[i] * std::exp((lam + 1.0) * std::log(x));
                double p0 = 1.0, p1 = 1.0 + lam - x;
                for (int n = 0; n <= nmax; ++n) {
                    lag_table[n] = (n == 0) ? p0 : p1;
                    if (n >= 1) {
                        double p2 =
                            ((2.0 * n + 1.0 + lam - x) * p1 - (n + lam) * p0) / (n + 1.0);
                        p0 = p1;
                        p1 = p2;
                    }
                }
                for (int n = 0; n <= nmax; ++n) {
                    diag[n] += wgt * lag_table[n] * lag_table[n];
                    if (n < nmax) off[n] += wgt * lag_table[n] * lag_table[n + 1];
                }
            }
            double scale = a_l / (2.0 * omega_ * omega_);
            for (int n = 0; n <= nmax; ++n) {
                r2_diag_ += std::norm(coeff_[index(l, n)]) * diag[n] * scale;
                if (n < nmax)
                    r2_offdiag_ += std::conj(coeff_[index(l, n)]) * coeff_[index(l, n + 1)] *
                                   off[n] * scale;
            }
        }
    }

    // state value at t = 0 with the e^(-x/2) Gaussian removed (for the
    // weighted quadrature of |Psi|^2)
    complexd evaluate_unweighted(double theta, double x) const {
        complexd total = 0.0;
        for (int l = 0; l <= trunc_.l1_max; ++l) {
            double ang = spectrum::angular_wavefunction(l, theta, params_);
            if (ang == 0.0) continue;
            double lam = lambda_[l];
            double radial_base = std::exp(0.5 * lam * std::log(x));
            complexd shell = 0.0;
            double p0 = 1.0, p1 = 1.0 + lam - x;
            for (int n = 0; n <= trunc_.nr_max; ++n) {
                double L = (n == 0) ? p0 : p1;
                if (n >= 1) {
                    double p2 = ((2.0 * n + 1.0 + lam - x) * p1 - (n + lam) * p0) / (n + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                shell += coeff_[index(l, n)] * (radial_base * L);
            }
            total += shell * ang;
        }
        return total;
    }
};

} // namespace ttw::coherent
