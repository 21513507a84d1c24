#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ttw/classical.hpp"
#include "ttw/coherent.hpp"

using namespace ttw;
namespace cl = ttw::classical;
using Catch::Approx;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1.0);
    return v;
}

} // namespace

TEST_CASE("hamiltonian anchors") {
    PotentialParams iso(1.0, 0.0, 0.0, Rational(1));
    CHECK(cl::hamiltonian({1.0, M_PI / 4, 0.0, 0.0}, iso) == Approx(1.0));

    PotentialParams p11(1.0, 1.0, 1.0, Rational(1));
    CHECK(cl::hamiltonian({1.0, M_PI / 4, 0.0, 0.0}, p11) == Approx(5.0));

    PotentialParams k2(1.0, 1.0, 0.0, Rational(2));
    CHECK(cl::hamiltonian({1.0, M_PI / 8, 0.0, 0.0}, k2) == Approx(9.0));

    CHECK_THROWS_AS(cl::hamiltonian({0.0, 0.3, 0.0, 0.0}, iso), std::domain_error);
    CHECK_THROWS_AS(cl::hamiltonian({1.0, 0.0, 0.0, 0.0}, iso), std::domain_error);
}

TEST_CASE("angular charge anchors") {
    PotentialParams iso(1.0, 0.0, 0.0, Rational(1));
    CHECK(cl::angular_charge({1.3, 0.7, 0.2, 2.0}, iso) == Approx(4.0));

    for (auto k : {Rational(1), Rational(2), Rational(5, 2)}) {
        PotentialParams p(1.0, 1.0, 1.0, k);
        double mid = M_PI / (4.0 * k.value());
        double expect = k.value() * k.value() * 4.0;
        CHECK(cl::angular_charge({1.0, mid, 0.0, 0.0}, p) == Approx(expect));
    }
}

TEST_CASE("flow derivative: circular configuration is stationary in r") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(3, 2));
    double A = 14.0;
    double th_min = cl::angular_minimum(p);
    double k = p.k_value();
    double V = p.alpha / std::pow(std::sin(k * th_min), 2) +
               p.beta / std::pow(std::cos(k * th_min), 2);
    cl::ClassicalState s;
    s.r = std::pow(A / (p.omega * p.omega), 0.25);
    s.theta = th_min;
    s.p_r = 0.0;
    s.p_theta = std::sqrt(A - k * k * V);
    auto d = cl::flow_derivative(s, p);
    CHECK(d[0] == Approx(0.0).margin(1e-12));
    CHECK(d[2] == Approx(0.0).margin(1e-10));

    // central force when the angular barrier vanishes
    PotentialParams iso(1.0, 0.0, 0.0, Rational(1));
    CHECK(cl::flow_derivative({1.2, 0.8, 0.3, 0.9}, iso)[3] == Approx(0.0).margin(1e-15));

    // symmetric barrier: angular force vanishes at the wedge midpoint
    PotentialParams sym(1.0, 1.5, 1.5, Rational(2));
    CHECK(cl::flow_derivative({1.0, M_PI / 8, 0.1, 0.2}, sym)[3] == Approx(0.0).margin(1e-12));
}

TEST_CASE("integrate: r^2 period and closed-form match") {
    // the r^2 identity s'' + 16 w^2 s = 8E holds for every TTW orbit; weak
    // walls keep the wedge motion confined over the full span
    PotentialParams p(1.0, 0.25, 0.25, Rational(1));
    cl::ClassicalState s0{1.4, 0.8, 0.35, 0.9};
    double period = M_PI / 2.0;
    auto traj = cl::integrate(s0, p, 2.0 * period, 1e-11, linspace(0.0, 2.0 * period, 1201));

    // quasi-1-D harmonic check: r^2 returns to its initial value
    double s_init = s0.r * s0.r;
    int at_period = 600;
    CHECK(traj.t[at_period] == Approx(period));
    double s_after = traj.states[at_period].r * traj.states[at_period].r;
    CHECK(s_after == Approx(s_init).epsilon(1e-8));

    // r^2(t) matches the closed form pointwise to 1e-6
    auto f = cl::radial_closed_form(s0, p);
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        double s_num = traj.states[i].r * traj.states[i].r;
        CHECK(s_num == Approx(f.r2_at(traj.t[i], p.omega)).margin(1e-6 * f.mean));
    }
}

TEST_CASE("integrate: conservation over 100 radial periods") {
    PotentialParams p(1.0, 1.0, 1.0, Rational(3, 2));
    cl::ClassicalState s0 = cl::state_at_radial_turning(12.0, 14.0, p);
    double horizon = 100.0 * M_PI / 2.0;
    auto traj = cl::integrate(s0, p, horizon, 1e-10, linspace(0.0, horizon, 400));
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        CHECK(std::abs(traj.energy[i] - traj.energy0) <= 1e-9 * traj.energy0);
        CHECK(std::abs(traj.charge[i] - traj.angular_charge0) <= 1e-9 * traj.angular_charge0);
    }
}

TEST_CASE("integrate: time reversal returns to the start") {
    PotentialParams p(1.0, 2.0, 0.75, Rational(5, 2));
    cl::ClassicalState s0 = cl::state_at_radial_turning(16.0, 40.0, p);
    s0.p_r = 0.0;
    double t_end = 3.7;
    auto fwd = cl::integrate(s0, p, t_end, 1e-11, {t_end});
    cl::ClassicalState mid = fwd.states.back();
    mid.p_r = -mid.p_r;
    mid.p_theta = -mid.p_theta;
    auto back = cl::integrate(mid, p, t_end, 1e-11, {t_end});
    const auto& end = back.states.back();
    CHECK(end.r == Approx(s0.r).margin(1e-7 * s0.r));
    CHECK(end.theta == Approx(s0.theta).margin(1e-7 * p.theta_max()));
    CHECK(-end.p_r == Approx(s0.p_r).margin(1e-7 * std::max(1.0, std::abs(s0.p_r))));
    CHECK(-end.p_theta == Approx(s0.p_theta).margin(1e-7 * std::max(1.0, std::abs(s0.p_theta))));
}

TEST_CASE("integrate: discrete r^2 harmonicity residual") {
    PotentialParams p(1.0, 1.0, 0.5, Rational(2));
    cl::ClassicalState s0 = cl::state_at_radial_turning(14.0, 20.0, p);
    double period = M_PI / 2.0;
    int n = 1201;
    auto ts = linspace(0.0, period, n);
    double dt = ts[1] - ts[0];
    auto traj = cl::integrate(s0, p, period, 1e-12, ts);
    double E = traj.energy0, w = p.omega;
    for (int i = 1; i + 1 < n; ++i) {
        double sm = traj.states[i - 1].r * traj.states[i - 1].r;
        double s = traj.states[i].r * traj.states[i].r;
        double sp = traj.states[i + 1].r * traj.states[i + 1].r;
        double resid = (sp - 2.0 * s + sm) / (dt * dt) + 16.0 * w * w * s - 8.0 * E;
        CHECK(std::abs(resid) <= 1e-5 * 8.0 * E);
    }
}

TEST_CASE("integrate: dense output agrees with direct endpoint integration") {
    PotentialParams p(1.0, 1.0, 1.0, Rational(3, 2));
    cl::ClassicalState s0 = cl::state_at_radial_turning(12.0, 14.0, p);
    auto traj = cl::integrate(s0, p, 2.0, 1e-11, {0.37, 0.81, 1.29, 1.77});
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        auto direct = cl::integrate(s0, p, traj.t[i], 1e-12, {traj.t[i]});
        CHECK(traj.states[i].r == Approx(direct.states.back().r).margin(1e-8));
        CHECK(traj.states[i].theta == Approx(direct.states.back().theta).margin(1e-8));
        CHECK(traj.states[i].p_r == Approx(direct.states.back().p_r).margin(1e-7));
        CHECK(traj.states[i].p_theta == Approx(direct.states.back().p_theta).margin(1e-8));
    }
}

TEST_CASE("integrate: radial line through the origin collapses the step") {
    PotentialParams iso(1.0, 0.0, 0.0, Rational(1));
    cl::ClassicalState s0{1.0, 0.7, 0.0, 0.0};  // A = 0, falls to r = 0
    CHECK_THROWS_AS(cl::integrate(s0, iso, 1.0, 1e-10, {1.0}), cl::StepCollapseError);
}

TEST_CASE("closure: rational k closes, surrogate does not") {
    auto run = [](const Rational& k, int periods) {
        PotentialParams p(1.0, 1.0, 1.0, k);
        double kk = k.value();
        double A = kk * kk * 4.0 + 5.0;  // above the barrier minimum 4 k^2
        double E = 2.0 * std::sqrt(A) + 4.0;
        double mean = E / 2.0;
        // radial turning point, wedge midpoint, generic angular momentum
        cl::ClassicalState s0;
        s0.r = std::sqrt(mean + std::sqrt(mean * mean - A));
        s0.theta = M_PI / (4.0 * kk);
        s0.p_r = 0.0;
        s0.p_theta = std::sqrt(5.0);  // A - k^2 V(midpoint)
        return cl::closure_detect(s0, p, periods, 1e-6);
    };

    auto c1 = run(Rational(1), 6);
    REQUIRE(c1.has_value());
    CHECK(c1->time == Approx(M_PI / 2.0).epsilon(1e-6));
    CHECK(c1->residual < 1e-6);

    auto c32 = run(Rational(3, 2), 12);
    REQUIRE(c32.has_value());
    CHECK(c32->time == Approx(2.0 * M_PI / 2.0).epsilon(1e-6));

    auto surrogate = run(Rational::parse("7072135/5000000"), 40);
    CHECK_FALSE(surrogate.has_value());
}
