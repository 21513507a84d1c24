#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ttw/params.hpp"

namespace ttw::classical {

struct StepCollapseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Phase-space point (r, theta, p_r, p_theta), r > 0, theta strictly inside
/// the wedge.
struct ClassicalState {
    double r = 1.0;
    double theta = 0.5;
    double p_r = 0.0;
    double p_theta = 0.0;
};

using Tangent = std::array<double, 4>;

namespace detail {

inline void require_interior(const ClassicalState& s, const PotentialParams& p) {
    double kt = p.k_value() * s.theta;
    if (!(s.r > 0.0) || !(std::sin(kt) > 0.0) || !(std::cos(kt) > 0.0))
        throw std::domain_error("classical: state at a wall or the origin");
}

inline double angular_potential(double theta, const PotentialParams& p) {
    double kt = p.k_value() * theta;
    double s = std::sin(kt), c = std::cos(kt);
    return p.alpha / (s * s) + p.beta / (c * c);
}

inline double angular_potential_derivative(double theta, const PotentialParams& p) {
    double k = p.k_value();
    double kt = k * theta;
    double s = std::sin(kt), c = std::cos(kt);
    return k * (-2.0 * p.alpha * c / (s * s * s) + 2.0 * p.beta * s / (c * c * c));
}

} // namespace detail

/// H = p_r^2 + p_th^2/r^2 + w^2 r^2 + (k^2/r^2)(alpha/sin^2 + beta/cos^2).
inline double hamiltonian(const ClassicalState& s, const PotentialParams& p) {
    detail::require_interior(s, p);
    double k = p.k_value();
    return s.p_r * s.p_r + (s.p_theta * s.p_theta + k * k * detail::angular_potential(s.theta, p)) /
                               (s.r * s.r) +
           p.omega * p.omega * s.r * s.r;
}

/// Conserved angular charge A = k^2 L^2 = p_th^2 + k^2 (alpha/sin^2 + beta/cos^2).
inline double angular_charge(const ClassicalState& s, const PotentialParams& p) {
    detail::require_interior(s, p);
    double k = p.k_value();
    return s.p_theta * s.p_theta + k * k * detail::angular_potential(s.theta, p);
}

/// Hamilton's equations for the 1/2-free kinetic normalization:
/// dr/dt = 2 p_r (the convention forced by the 4w expectation frequency).
inline Tangent flow_derivative(const ClassicalState& s, const PotentialParams& p) {
    detail::require_interior(s, p);
    double k = p.k_value();
    double r2 = s.r * s.r;
    double V = detail::angular_potential(s.theta, p);
    return {2.0 * s.p_r,
            2.0 * s.p_theta / r2,
            2.0 * (s.p_theta * s.p_theta + k * k * V) / (r2 * s.r) -
                2.0 * p.omega * p.omega * s.r,
            -(k * k / r2) * detail::angular_potential_derivative(s.theta, p)};
}

/// Integrated orbit sampled at caller-requested times.
struct Trajectory {
    std::vector<double> t;
    std::vector<ClassicalState> states;
    std::vector<double> energy;
    std::vector<double> charge;
    double energy0 = 0.0;
    double angular_charge0 = 0.0;
};

namespace detail {

struct OutsideDomain {};

inline Tangent rhs_checked(const std::array<double, 4>& y, const PotentialParams& p) {
    ClassicalState s{y[0], y[1], y[2], y[3]};
    double kt = p.k_value() * s.theta;
    if (!(s.r > 0.0) || !(std::sin(kt) > 0.0) || !(std::cos(kt) > 0.0)) throw OutsideDomain{};
    double k = p.k_value();
    double r2 = s.r * s.r;
    double V = angular_potential(s.theta, p);
    return {2.0 * s.p_r, 2.0 * s.p_theta / r2,
            2.0 * (s.p_theta * s.p_theta + k * k * V) / (r2 * s.r) -
                2.0 * p.omega * p.omega * s.r,
            -(k * k / r2) * angular_potential_derivative(s.theta, p)};
}

// Dormand-Prince 5(4) with the standard quartic dense-output interpolant.
class Dopri5 {
public:
    // tol is the trajectory-level target; the per-step error tolerance sits
    // three orders below it so drift over hundreds of periods stays at tol.
    Dopri5(const std::array<double, 4>& y0, double t0, const PotentialParams& p, double tol)
        : p_(p), tol_(std::max(tol * 1e-3, 4e-15)), t_(t0), y_(y0) {
        k1_ = rhs_checked(y_, p_);
        h_ = initial_step();
    }

    double t() const { return t_; }
    const std::array<double, 4>& y() const { return y_; }
    double t_prev() const { return t_prev_; }

    /// Advance one accepted step, at most to t_limit.
    void step(double t_limit) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            double h = std::min(h_, t_limit - t_);
            if (!(h > 0.0)) throw StepCollapseError("integrate: nonpositive step");
            bool ok = true;
            double err = 0.0;
            std::array<double, 4> ynew{};
            try {
                err = try_step(h, ynew);
            } catch (const OutsideDomain&) {
                ok = false;  // trial stage grazed a wall; retry smaller
            }
            if (ok && err <= 1.0) {
                t_prev_ = t_;
                y_prev_ = y_;
                t_ += h;
                h_last_ = h;
                y_ = ynew;
                k1_ = k7_;  // FSAL
                double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                h_ = h * std::min(5.0, std::max(0.2, grow));
                return;
            }
            double shrink = ok ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
            h_ = h * shrink;
            if (h_ < step_floor_ * std::max(1.0, std::abs(t_limit)))
                throw StepCollapseError("integrate: step collapsed near a wall");
        }
        throw StepCollapseError("integrate: excessive step rejections");
    }

    /// Dense output inside the last accepted step [t_prev, t].
    std::array<double, 4> dense(double tq) const {
        double h = h_last_;
        double th = (tq - t_prev_) / h;
        std::array<double, 4> out{};
        for (int i = 0; i < 4; ++i) {
            double dy = y_[i] - y_prev_[i];
            double r1 = y_prev_[i];
            double r2 = dy;
            double r3 = h * kd_[0][i] - dy;
            double r4 = dy - h * k7_[i] - r3;
            double r5 = h * (d1 * kd_[0][i] + d3 * kd_[2][i] + d4 * kd_[3][i] + d5 * kd_[4][i] +
                             d6 * kd_[5][i] + d7 * k7_[i]);
            out[i] = r1 + th * (r2 + (1.0 - th) * (r3 + th * (r4 + (1.0 - th) * r5)));
        }
        return out;
    }

private:
    PotentialParams p_;
    double tol_;
    double t_ = 0.0, t_prev_ = 0.0;
    double h_ = 1e-3, h_last_ = 0.0;
    double step_floor_ = 1e-14;
    std::array<double, 4> y_{}, y_prev_{};
    Tangent k1_{}, k7_{};
    std::array<Tangent, 6> kd_{};  // k1..k6 of the last accepted step

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    double initial_step() const {
        double scale = 0.0;
        for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(k1_[i]));
        return std::max(1e-8, 0.01 / std::max(scale, 1.0));
    }

    double try_step(double h, std::array<double, 4>& ynew) {
        auto axpy = [](const std::array<double, 4>& y, std::initializer_list<double> cs,
                       std::initializer_list<const Tangent*> ks, double h) {
            std::array<double, 4> out = y;
            auto ci = cs.begin();
            for (auto kp : ks) {
                for (int i = 0; i < 4; ++i) out[i] += h * (*ci) * (*kp)[i];
                ++ci;
            }
            return out;
        };
        Tangent k2 = rhs_checked(axpy(y_, {a21}, {&k1_}, h), p_);
        Tangent k3 = rhs_checked(axpy(y_, {a31, a32}, {&k1_, &k2}, h), p_);
        Tangent k4 = rhs_checked(axpy(y_, {a41, a42, a43}, {&k1_, &k2, &k3}, h), p_);
        Tangent k5 = rhs_checked(axpy(y_, {a51, a52, a53, a54}, {&k1_, &k2, &k3, &k4}, h), p_);
        Tangent k6 =
            rhs_checked(axpy(y_, {a61, a62, a63, a64, a65}, {&k1_, &k2, &k3, &k4, &k5}, h), p_);
        ynew = axpy(y_, {b1, b3, b4, b5, b6}, {&k1_, &k3, &k4, &k5, &k6}, h);
        k7_ = rhs_checked(ynew, p_);

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7_[i]);
            double sc = tol_ + tol_ * std::max(std::abs(y_[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        kd_ = {k1_, k2, k3, k4, k5, k6};
        return std::sqrt(err / 4.0);
    }
};

} // namespace detail

/// Adaptive 5(4) integration from s0 over [0, t_end], sampled at the given
/// times (dense output inside accepted steps). tol in [1e-12, 1e-6].
inline Trajectory integrate(const ClassicalState& s0, const PotentialParams& params, double t_end,
                            double tol, const std::vector<double>& sample_times) {
    if (!(tol >= 1e-12) || !(tol <= 1e-6))
        throw std::invalid_argument("integrate: tol must lie in [1e-12, 1e-6]");
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
    detail::require_interior(s0, params);

    Trajectory traj;
    traj.energy0 = hamiltonian(s0, params);
    traj.angular_charge0 = angular_charge(s0, params);

    detail::Dopri5 stepper({s0.r, s0.theta, s0.p_r, s0.p_theta}, 0.0, params, tol);
    auto record = [&](double t, const std::array<double, 4>& y) {
        ClassicalState s{y[0], y[1], y[2], y[3]};
        traj.t.push_back(t);
        traj.states.push_back(s);
        traj.energy.push_back(hamiltonian(s, params));
        traj.charge.push_back(angular_charge(s, params));
    };

    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] <= 0.0) {
        record(0.0, {s0.r, s0.theta, s0.p_r, s0.p_theta});
        ++next;
    }
    while (stepper.t() < t_end && next < sample_times.size()) {
        stepper.step(t_end);
        while (next < sample_times.size() && sample_times[next] <= stepper.t() + 1e-15) {
            record(sample_times[next], stepper.dense(std::min(sample_times[next], stepper.t())));
            ++next;
        }
    }
    return traj;
}

/// Closed-form radial motion r^2(t) = E/(2w^2) + B sin(4w(t - t0)) with
/// (E, A, t0) computed analytically from the initial state. This is the
/// classical identity behind the coherent-state <r>^2 formula.
struct RadialClosedForm {
    double E = 0.0;
    double A = 0.0;
    double t0 = 0.0;
    double mean = 0.0;
    double amplitude = 0.0;

    double r2_at(double t, double omega) const {
        return mean + amplitude * std::sin(4.0 * omega * (t - t0));
    }
};

inline RadialClosedForm radial_closed_form(const ClassicalState& s0,
                                           const PotentialParams& params) {
    RadialClosedForm f;
    f.E = hamiltonian(s0, params);
    f.A = angular_charge(s0, params);
    double w = params.omega;
    f.mean = f.E / (2.0 * w * w);
    f.amplitude = std::sqrt(std::max(f.mean * f.mean - f.A / (w * w), 0.0));
    if (f.amplitude > 0.0) {
        double s = s0.r * s0.r;
        double sdot = 4.0 * s0.r * s0.p_r;
        f.t0 = -std::atan2((s - f.mean) / f.amplitude, sdot / (4.0 * w * f.amplitude)) / (4.0 * w);
    }
    return f;
}

/// Angular wedge position of the potential minimum (requires beta > 0).
inline double angular_minimum(const PotentialParams& params) {
    if (!(params.beta > 0.0))
        throw std::domain_error("angular_minimum: requires beta > 0");
    return std::atan(std::pow(params.alpha / params.beta, 0.25)) / params.k_value();
}

/// State with prescribed (E, A) at the outer radial turning point, theta on
/// the upper branch where k^2 V(theta) = A and p_theta = 0.
inline ClassicalState state_at_radial_turning(double E, double A, const PotentialParams& params) {
    double w = params.omega;
    if (!(E * E >= 4.0 * w * w * A))
        throw std::domain_error("state_at_radial_turning: E^2 < 4 w^2 A");
    double k = params.k_value();
    double v_target = A / (k * k);
    double lo = angular_minimum(params);
    if (detail::angular_potential(lo, params) >= v_target)
        throw std::domain_error("state_at_radial_turning: A below the angular barrier minimum");
    double hi = params.theta_max() * (1.0 - 1e-12);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (detail::angular_potential(mid, params) < v_target ? lo : hi) = mid;
    }
    ClassicalState s;
    double mean = E / (2.0 * w * w);
    s.r = std::sqrt(mean + std::sqrt(std::max(mean * mean - A / (w * w), 0.0)));
    s.theta = 0.5 * (lo + hi);
    s.p_r = 0.0;
    s.p_theta = 0.0;
    return s;
}

/// Closure detection on the Poincare section p_r = 0: integrate up to
/// max_radial_periods * pi/(2w), refine every p_r zero crossing by dense
/// output, and report the first crossing whose scale-normalized phase-space
/// distance to s0 falls below tol. Expects s0 at (or near) a radial turning
/// point; absence of closure is a valid result.
struct ClosureResult {
    double time = 0.0;
    double residual = 0.0;
};

inline std::optional<ClosureResult> closure_detect(const ClassicalState& s0,
                                                   const PotentialParams& params,
                                                   int max_radial_periods, double tol) {
    detail::require_interior(s0, params);
    double w = params.omega;
    double t_radial = M_PI / (2.0 * w);
    double horizon = max_radial_periods * t_radial;

    // scales from the first radial period
    double r_max = s0.r, pr_max = std::abs(s0.p_r), pth_max = std::abs(s0.p_theta);
    {
        detail::Dopri5 scan({s0.r, s0.theta, s0.p_r, s0.p_theta}, 0.0, params, 1e-10);
        while (scan.t() < t_radial) {
            scan.step(t_radial);
            r_max = std::max(r_max, scan.y()[0]);
            pr_max = std::max(pr_max, std::abs(scan.y()[2]));
            pth_max = std::max(pth_max, std::abs(scan.y()[3]));
        }
    }
    std::array<double, 4> scale{r_max, params.theta_max(), std::max(pr_max, 1e-6),
                                std::max(pth_max, 1e-6)};
    auto distance = [&](const std::array<double, 4>& y) {
        double d = 0.0;
        double to[4] = {s0.r, s0.theta, s0.p_r, s0.p_theta};
        for (int i = 0; i < 4; ++i) {
            double e = (y[i] - to[i]) / scale[i];
            d += e * e;
        }
        return std::sqrt(d);
    };

    detail::Dopri5 stepper({s0.r, s0.theta, s0.p_r, s0.p_theta}, 0.0, params, 1e-11);
    double min_gap = 0.05 * t_radial;  // ignore the immediate neighborhood of t = 0
    double prev_pr = s0.p_r, prev_t = 0.0;
    while (stepper.t() < horizon) {
        stepper.step(horizon);
        double pr = stepper.y()[2];
        if (prev_pr != 0.0 && ((prev_pr < 0.0) != (pr < 0.0))) {
            // refine the crossing by bisection on the dense output
            double lo = prev_t, hi = stepper.t();
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                double v = stepper.dense(mid)[2];
                if ((v < 0.0) == (prev_pr < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            double tc = 0.5 * (lo + hi);
            if (tc > min_gap) {
                auto yc = stepper.dense(tc);
                double d = distance(yc);
                if (d < tol) return ClosureResult{tc, d};
            }
        }
        prev_pr = pr;
        prev_t = stepper.t();
    }
    return std::nullopt;
}

} // namespace ttw::classical
