#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "ttw/classical.hpp"
#include "ttw/coherent.hpp"
#include "ttw/spectrum.hpp"

using namespace ttw;
namespace co = ttw::coherent;
using co::complexd;
using Catch::Approx;

namespace {

co::OscillatorAmplitudes random_amplitudes(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.2, 2.0), ph(0.0, 2.0 * M_PI);
    auto c = [&] { return std::polar(mag(rng), ph(rng)); };
    return {c(), c(), c(), c(), 1.0};
}

} // namespace

TEST_CASE("charges: anchor values") {
    co::OscillatorAmplitudes equal{1.0, 1.0, 1.0, 1.0, 1.0};
    auto c = co::charges_from_amplitudes(equal);
    CHECK(c.L12 == Approx(0.0).margin(1e-15));
    CHECK(c.energy_over_omega == Approx(2.0));

    co::OscillatorAmplitudes rot{1.0, complexd(0.0, 1.0), 1.0, 1.0, 1.0};
    auto c2 = co::charges_from_amplitudes(rot);
    CHECK(c2.L12 == Approx(1.0));
    // kappa1^2 + kappa2^2 = 0 leaves K0 undefined but flagged, not thrown
    CHECK_FALSE(c2.K0_defined);
    CHECK(c2.Lambda0_defined);
}

TEST_CASE("charges are conserved under time evolution") {
    std::mt19937 rng(20120731);
    std::uniform_real_distribution<double> tdist(0.0, 7.0);
    for (int i = 0; i < 100; ++i) {
        auto a = random_amplitudes(rng);
        auto c0 = co::charges_from_amplitudes(a);
        for (int j = 0; j < 20; ++j) {
            auto ct = co::charges_from_amplitudes(co::evolve(a, tdist(rng)));
            CHECK(ct.L12 == Approx(c0.L12).margin(1e-12));
            CHECK(ct.L34 == Approx(c0.L34).margin(1e-12));
            CHECK(ct.energy_over_omega == Approx(c0.energy_over_omega).margin(1e-12));
            CHECK(std::abs(ct.kappa_sq) == Approx(std::abs(c0.kappa_sq)).margin(1e-12));
            if (c0.K0_defined)
                CHECK(std::abs(ct.K0) == Approx(std::abs(c0.K0)).margin(1e-12));
            if (c0.Lambda0_defined)
                CHECK(std::abs(ct.Lambda0) == Approx(std::abs(c0.Lambda0)).margin(1e-12));
        }
    }
}

TEST_CASE("constrain_amplitudes: satisfied constraints and symmetric moduli") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(3, 2));
    auto a = co::constrain_amplitudes(9.0, p, 0.3, -0.4, 0.55);
    auto c = co::charges_from_amplitudes(a);
    CHECK(c.L12 == Approx(p.k_value() * p.p_phi()).margin(1e-12));
    CHECK(c.L34 == Approx(p.k_value() * p.p_psi()).margin(1e-12));
    CHECK(c.energy_over_omega == Approx(9.0).margin(1e-12));
    CHECK(std::abs(a.kappa1) == Approx(std::abs(a.kappa2)).margin(1e-13));
    CHECK(std::abs(a.lambda1) == Approx(std::abs(a.lambda2)).margin(1e-13));
}

TEST_CASE("constrain_amplitudes: boundary and infeasible cases") {
    // alpha = 3/4, k = 1, u-pair share 2 => phase difference pi/2, zero bracket
    PotentialParams p(1.0, 0.75, 0.0, Rational(1));
    auto a = co::constrain_amplitudes(2.0, p, 0.0, 0.0, 0.5);
    CHECK(std::abs(a.kappa1) == Approx(1.0).margin(1e-13));
    double eta = std::arg(a.kappa2) - std::arg(a.kappa1);  // phi2 - phi1
    CHECK(std::sin(eta) == Approx(1.0).margin(1e-12));
    for (double t : {0.0, 0.3, 1.1})
        CHECK(co::expectation_u2(a, t, 0.75) == Approx(1.0).margin(1e-12));

    // alpha = 0 target is k/2, not zero
    PotentialParams p0(1.0, 0.0, 0.0, Rational(1));
    auto a0 = co::constrain_amplitudes(2.0, p0);
    CHECK(co::charges_from_amplitudes(a0).L12 == Approx(0.5).margin(1e-13));

    // alpha = 2: target 1.5 > |k1 k2| = 1 is infeasible
    PotentialParams p2(1.0, 2.0, 0.0, Rational(1));
    CHECK_THROWS_AS(co::constrain_amplitudes(2.0, p2, 0.0, 0.0, 0.5), co::InfeasibleCharges);
    try {
        co::constrain_amplitudes(2.0, p2, 0.0, 0.0, 0.5);
    } catch (const co::InfeasibleCharges& e) {
        CHECK(e.min_feasible_e_target == Approx(3.0));  // w * target_u / split
        CHECK_NOTHROW(co::constrain_amplitudes(e.min_feasible_e_target * 1.001, p2, 0.0, 0.0, 0.5));
    }
}

TEST_CASE("expectation_u2/v2: constraint checking and extrema") {
    PotentialParams p(1.0, 0.75, 0.75, Rational(1));
    auto a = co::constrain_amplitudes(6.0, p, 0.4, 0.2, 0.5);
    CHECK_THROWS_AS(co::expectation_u2(a, 0.0, 2.0), co::ConstraintViolation);

    // maximum at t = phi/(2w) where 2 phi = arg kappa^2(0)
    double two_phi = std::arg(a.kappa_pair_sq());
    double tstar = two_phi / 4.0;
    double fmax = co::expectation_u2(a, tstar, 0.75);
    CHECK(fmax >= co::expectation_u2(a, tstar + 0.05, 0.75));
    CHECK(fmax >= co::expectation_u2(a, tstar - 0.05, 0.75));

    // bracket is nonnegative under the constraint: u2 never NaN, v2 mirror
    for (double t = 0.0; t < 2.0; t += 0.1) {
        CHECK(std::isfinite(co::expectation_u2(a, t, 0.75)));
        CHECK(std::isfinite(co::expectation_v2(a, t, 0.75)));
    }
}

TEST_CASE("expectation_r2: anchors, periodicity, positivity") {
    CHECK(co::expectation_r2(4.0, 4.0, 1.0, 0.7, 0.0) == Approx(2.0).margin(1e-14));
    CHECK(co::expectation_r2(4.0, 3.0, 1.0, 0.0, 0.0) == Approx(2.0).margin(1e-14));
    CHECK_THROWS_AS(co::expectation_r2(2.0, 4.0, 1.0, 0.0, 0.0), std::domain_error);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.5, 4.0);
    for (int i = 0; i < 100; ++i) {
        double w = dist(rng);
        double E = 4.0 * dist(rng);
        double A = 0.9 * E * E / (4.0 * w * w) * (0.2 + 0.2 * dist(rng));
        double t0 = dist(rng), t = dist(rng);
        double period = M_PI / (2.0 * w);
        double f0 = co::expectation_r2(E, A, w, t, t0);
        double f1 = co::expectation_r2(E, A, w, t + period, t0);
        CHECK(f1 == Approx(f0).margin(1e-12 * std::abs(f0)));
        double mean = E / (2.0 * w * w);
        double lower = mean - std::sqrt(mean * mean - A / (w * w));
        CHECK(f0 >= lower - 1e-12);
        CHECK(lower > 0.0);
    }
}

TEST_CASE("expectation periodicity pi/(2w) for the pair moments") {
    std::mt19937 rng(11);
    PotentialParams p(1.3, 0.75, 0.75, Rational(1));
    auto a = co::constrain_amplitudes(8.0 * 1.3, p, 0.9, -0.3, 0.5);
    double period = M_PI / (2.0 * p.omega);
    for (double t = 0.0; t < 3.0; t += 0.17) {
        CHECK(co::expectation_u2(a, t + period, 0.75) ==
              Approx(co::expectation_u2(a, t, 0.75)).margin(1e-12));
        CHECK(co::expectation_v2(a, t + period, 0.75) ==
              Approx(co::expectation_v2(a, t, 0.75)).margin(1e-12));
    }
    (void)rng;
}

TEST_CASE("expectation_sin2_theta: symmetry and range") {
    // symmetric charges: ratio is exactly 1/2 at all times
    PotentialParams sym(1.0, 1.0, 1.0, Rational(1));
    auto a = co::constrain_amplitudes(8.0, sym, 0.6, 0.6, 0.5);
    for (double t = 0.0; t < 2.0; t += 0.09)
        CHECK(co::expectation_sin2_theta(a, sym, t) == Approx(0.5).margin(1e-12));

    PotentialParams gen(1.0, 2.0, 0.75, Rational(3, 2));
    auto b = co::constrain_amplitudes(12.0, gen, 0.0, 0.0, 0.55);
    for (double t = 0.0; t < 2.0; t += 0.07) {
        double v = co::expectation_sin2_theta(b, gen, t);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }

    // unconstrained amplitudes are rejected
    co::OscillatorAmplitudes raw{1.0, 2.0, 0.5, 1.0, 1.0};
    CHECK_THROWS_AS(co::expectation_sin2_theta(raw, gen, 0.0), co::ConstraintViolation);
}

TEST_CASE("coherent evaluator: normalization, walls, periodicity") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(1));
    auto a = co::constrain_amplitudes(3.0, p, 0.0, 0.0, 0.5);
    co::CoherentEvaluator ev(a, p, co::SeriesTruncation(20, 32, 1e-6), 96);

    // independent re-integration of |Psi|^2 at a different quadrature order
    auto gl = quad::gauss_laguerre(144);
    auto leg = quad::gauss_legendre(144, 0.0, p.theta_max());
    double nrm = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        double x = gl.x[i];
        double r = std::sqrt(x / p.omega);
        double row = 0.0;
        for (std::size_t j = 0; j < leg.x.size(); ++j) {
            complexd v = ev.evaluate_with_tail(0.0, r, leg.x[j]).value;
            row += leg.w[j] * std::norm(v);
        }
        nrm += gl.w[i] * std::exp(x) * row / (2.0 * p.omega);
    }
    CHECK(nrm == Approx(1.0).margin(1e-6));

    // wall limits
    CHECK(std::abs(ev.evaluate(0.0, 1.0, 0.0)) == 0.0);
    CHECK(std::abs(ev.evaluate(0.0, 0.0, 0.4)) == 0.0);
    CHECK(std::abs(ev.evaluate(0.3, 1.0, 1e-9)) < 1e-8);

    // |Psi|^2 invariant under t -> t + pi/w
    for (double r : {0.5, 1.2})
        for (double th : {0.4, 1.0}) {
            double d0 = std::norm(ev.evaluate(0.13, r, th));
            double d1 = std::norm(ev.evaluate(0.13 + M_PI / p.omega, r, th));
            CHECK(d1 == Approx(d0).margin(1e-10 * std::max(d0, 1e-12)));
        }
}

TEST_CASE("coherent evaluator: projections reproduce the series coefficients") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(1));
    auto a = co::constrain_amplitudes(3.0, p, 0.0, 0.0, 0.5);
    co::CoherentEvaluator ev(a, p, co::SeriesTruncation(18, 28, 1e-6), 96);

    // pick the 6 largest coefficients
    auto table = ev.coefficient_table();
    std::sort(table.begin(), table.end(),
              [](const auto& u, const auto& v) { return std::abs(u.value) > std::abs(v.value); });

    auto gl = quad::gauss_laguerre(128);
    auto leg = quad::gauss_legendre(128, 0.0, p.theta_max());
    for (int m = 0; m < 6; ++m) {
        const auto& entry = table[m];
        QuantumNumbers qn(entry.n_r, entry.l1);
        double chat = spectrum::norm_constant(qn, p);
        // projection <psi_hat | Psi> over r dr dth
        complexd proj = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            double x = gl.x[i];
            double r = std::sqrt(x / p.omega);
            complexd row = 0.0;
            for (std::size_t j = 0; j < leg.x.size(); ++j)
                row += leg.w[j] * spectrum::eigenstate(qn, p, r, leg.x[j]) *
                       ev.evaluate_with_tail(0.0, r, leg.x[j]).value;
            proj += gl.w[i] * std::exp(x) * row / (2.0 * p.omega);
        }
        proj *= chat;
        complexd predicted = entry.value / chat;
        CHECK(std::abs(proj - predicted) <= 1e-6 * std::abs(predicted));
    }
}

TEST_CASE("coherent evaluator at k=1 matches the Bessel-product closed form") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(1));
    auto a = co::constrain_amplitudes(3.0, p, 0.35, -0.2, 0.55);
    co::CoherentEvaluator ev(a, p, co::SeriesTruncation(22, 36, 1e-6), 96);

    const double mu = p.p_phi(), nu = p.p_psi();
    complexd ksq = a.kappa_pair_sq(), lsq = a.lambda_pair_sq();
    complexd sigma_sq = ksq + lsq;
    complexd w0 = -0.25 * sigma_sq;
    complexd sin_phi = std::exp(0.5 * std::log(ksq / sigma_sq));
    complexd cos_phi = std::exp(0.5 * std::log(lsq / sigma_sq));

    // Psi(0,r,th) * e^(-w0) should be proportional to
    // sqrt(sin cos) (z/2) J_mu(z sin sinPhi) J_nu(z cos cosPhi) e^(-x/2)
    complexd ratio0;
    bool first = true;
    for (double r : {0.6, 1.0, 1.5, 2.1}) {
        for (double th : {0.35, 0.8, 1.25}) {
            double x = p.omega * r * r;
            complexd z = 2.0 * std::sqrt(w0) * std::sqrt(complexd(x));
            double s = std::sin(th), c = std::cos(th);
            complexd closed = std::sqrt(s * c) * 0.5 * z *
                              specfun::bessel_j(mu, z * s * sin_phi) *
                              specfun::bessel_j(nu, z * c * cos_phi) * std::exp(-0.5 * x);
            complexd series = ev.evaluate_with_tail(0.0, r, th).value * std::exp(-w0);
            complexd ratio = series / closed;
            if (first) {
                ratio0 = ratio;
                first = false;
            } else {
                CHECK(std::abs(ratio - ratio0) <= 1e-8 * std::abs(ratio0));
            }
        }
    }
}

TEST_CASE("expectation_sin2_theta follows the classical angle at large charges") {
    // k = 1 reduction, barriers large against the 1/4 wall shifts, charges
    // |kappa|^2 ~ 40; the classical start matches the u- and v-pair energies
    // and phases (both pairs at their turning points at t = 0)
    PotentialParams p(1.0, 25.0, 16.0, Rational(1));
    double e_target = 20.0, split = 0.55;  // S = 40
    auto a = co::constrain_amplitudes(e_target, p, 0.0, 0.0, split);

    double Su = std::norm(a.kappa1) + std::norm(a.kappa2);
    double Sv = std::norm(a.lambda1) + std::norm(a.lambda2);
    double bu = std::sqrt(0.25 * Su * Su - p.alpha);  // classical pair amplitudes
    double bv = std::sqrt(0.25 * Sv * Sv - p.beta);
    double u0 = std::sqrt(0.5 * Su + bu), v0 = std::sqrt(0.5 * Sv + bv);
    double rho0 = std::hypot(u0, v0);
    ttw::classical::ClassicalState s0{rho0 / std::sqrt(p.omega), std::asin(u0 / rho0), 0.0, 0.0};

    double period = M_PI / (2.0 * p.omega);
    int n = 400;
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = period * i / (n - 1.0);
    auto traj = ttw::classical::integrate(s0, p, period, 1e-11, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        double model = co::expectation_sin2_theta(a, p, traj.t[i]);
        double orbit = std::pow(std::sin(p.k_value() * traj.states[i].theta), 2);
        worst = std::max(worst, std::abs(model - orbit));
    }
    CHECK(worst <= 2e-2);
}

TEST_CASE("series r^2 expectation tracks the closed form up to zero-point terms") {
    // the closed-form moment neglects uncertainties; the series moment keeps
    // them, so they differ by O(1/E_target) relative zero-point content
    PotentialParams p(1.0, 2.0, 0.75, Rational(1));
    for (double et : {6.0, 12.0}) {
        auto a = co::constrain_amplitudes(et, p, 0.0, 0.0, 0.55);
        co::CoherentEvaluator ev(a, p, co::SeriesTruncation(26, 48, 1e-6), 96);
        double E = co::mechanical_energy(a), A = co::angular_charge(a);
        double t0 = co::r2_reference_time(a);
        // the two routes differ by a time-independent zero-point shift of
        // about 1/w; their oscillating parts agree to quadrature accuracy
        double dmin = 1e300, dmax = -1e300;
        for (double t = 0.0; t < 1.6; t += 0.05) {
            double diff = ev.expectation_r2_series(t) - co::expectation_r2(E, A, 1.0, t, t0);
            dmin = std::min(dmin, diff);
            dmax = std::max(dmax, diff);
        }
        CHECK(dmax - dmin <= 1e-8);
        CHECK(dmin > 0.5);
        CHECK(dmax < 2.0);
        // both routes share the pi/(2w) period exactly
        double period = M_PI / 2.0;
        CHECK(ev.expectation_r2_series(0.37 + period) ==
              Approx(ev.expectation_r2_series(0.37)).epsilon(1e-12));
    }
}

TEST_CASE("exactly circular charges reduce to the ground eigenstate") {
    // both pair constraints at their extremal values: kappa^2 + lambda^2 = 0
    PotentialParams p(1.0, 0.75, 0.0, Rational(1));
    auto a = co::constrain_amplitudes(1.5, p, 0.0, 0.0, 2.0 / 3.0);
    CHECK(std::abs(a.kappa_pair_sq() + a.lambda_pair_sq()) < 1e-13);
    CHECK(co::angular_charge(a) ==
          Approx(std::pow(co::mechanical_energy(a) / 2.0, 2)).epsilon(1e-12));
    co::CoherentEvaluator ev(a, p, co::SeriesTruncation(8, 8, 1e-6), 64);
    double r2 = ev.expectation_r2_series(0.0);
    for (double t = 0.1; t < 1.5; t += 0.3)
        CHECK(ev.expectation_r2_series(t) == Approx(r2).epsilon(1e-12));
    // the surviving coefficient is (l1, n_r) = (0, 0)
    for (const auto& entry : ev.coefficient_table()) {
        if (entry.l1 == 0 && entry.n_r == 0)
            CHECK(std::abs(entry.value) > 0.9);
        else
            CHECK(std::abs(entry.value) == 0.0);
    }
}

TEST_CASE("coherent evaluator: truncation guard trips on too-small caps") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(1));
    auto a = co::constrain_amplitudes(10.0, p, 0.0, 0.0, 0.55);
    co::CoherentEvaluator tight(a, p, co::SeriesTruncation(3, 40, 1e-10), 64);
    CHECK_THROWS_AS(tight.evaluate(0.0, 1.4, 0.7), co::TruncationError);
    // generous caps keep the same evaluation under its tail tolerance
    co::CoherentEvaluator wide(a, p, co::SeriesTruncation(26, 48, 1e-8), 64);
    CHECK_NOTHROW(wide.evaluate(0.0, 1.4, 0.7));
}
