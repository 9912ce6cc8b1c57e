// Regularized dynamics: the complex-squaring (collision-passing) picture and
// the stereographic momentum-sphere coordinate maps, with consistency checks.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "szplus/dynamics.hpp"
#include "szplus/errors.hpp"
#include "szplus/geom.hpp"

namespace szplus {

struct RegPhaseState {
    Point2 v;       // regularized position
    Point2 u;       // conjugate variable
    double tau = 0.0;
    double t = 0.0; // accumulated physical time, dt = 4|v|^2 dtau
};

// Vector potential A with curl A = B.
struct GaugeChoice {
    std::function<Vec2(Point2)> A;
};

// Symmetric gauge A(q) = -(B/2) i q for the (constant) field of the system.
// The sign is fixed by requiring that the Hamiltonian flow of
// 0.5 |p - A|^2 + V under the standard symplectic form reproduces the
// second-order equation qddot = B J qdot - grad V used by the integrator,
// where J is the rotation by +90 degrees.
inline GaugeChoice make_symmetric_gauge(const SystemSpec& sys) {
    const double B = magnetic_B(sys);
    GaugeChoice g;
    g.A = [B](Point2 q) -> Vec2 { return {0.5 * B * q.y, -0.5 * B * q.x}; };
    return g;
}

struct MomentumState {
    Point2 q;
    Vec2 p;   // canonical momentum; velocity is p - A(q)
};

// (q, p) = (v^2, u / 2 conj(v))
inline MomentumState lc_map(const RegPhaseState& s) {
    if (s.v.norm2() < 1e-300)
        throw SingularityError("lc_map: collision point v = 0");
    const std::complex<double> v = to_complex(s.v);
    const std::complex<double> u = to_complex(s.u);
    const std::complex<double> q = v * v;
    const std::complex<double> p = u / (2.0 * std::conj(v));
    return {from_complex(q), from_complex(p)};
}

// Branch-consistent inverse: v is the square root of q closest to v_hint.
inline RegPhaseState lc_inverse(const MomentumState& s, Point2 v_hint = {1.0, 0.0}) {
    const std::complex<double> q = to_complex(s.q);
    std::complex<double> v = std::sqrt(q);
    const std::complex<double> hint = to_complex(v_hint);
    if (std::norm(v - hint) > std::norm(v + hint)) v = -v;
    const std::complex<double> u = 2.0 * std::conj(v) * to_complex(s.p);
    RegPhaseState out;
    out.v = from_complex(v);
    out.u = from_complex(u);
    return out;
}

namespace detail {

// Pulled-back vector potential 2 conj(v) A(v^2), as a complex product.  The
// factor 2 is forced by the cotangent lift u = 2 conj(v) p together with the
// defining identity of the regularized Hamiltonian.
inline Vec2 reg_A(const GaugeChoice& gauge, Point2 v) {
    const std::complex<double> vc = to_complex(v);
    const std::complex<double> a = to_complex(gauge.A(from_complex(vc * vc)));
    return from_complex(2.0 * std::conj(vc) * a);
}

// Smooth part of the potential: V1(q) = V(q) + k/|q| with k the origin
// Coulomb coefficient.
inline double smooth_V1(const SystemSpec& sys, Point2 q) {
    const double k = coulomb_strength_at_origin(sys);
    return potential_V(sys, q) + k / q.norm();
}

inline Vec2 grad_smooth_V1(const SystemSpec& sys, Point2 q) {
    const double k = coulomb_strength_at_origin(sys);
    const double r = q.norm();
    return grad_V(sys, q) - q * (k / (r * r * r));
}

} // namespace detail

// Regularized potential:  -4c|v|^2 + 4|v|^2 V1(v^2) - 4k, smooth at v = 0.
inline double reg_potential(const SystemSpec& sys, double c, Point2 v) {
    const double k = coulomb_strength_at_origin(sys);
    const double n2 = v.norm2();
    if (n2 < 1e-300) return -4.0 * k;
    const std::complex<double> vc = to_complex(v);
    return -4.0 * c * n2 + 4.0 * n2 * detail::smooth_V1(sys, from_complex(vc * vc)) -
           4.0 * k;
}

// Regularized Hamiltonian  0.5 |u - A_reg(v)|^2 + reg_potential(v).
inline double lc_hamiltonian(const SystemSpec& sys, const GaugeChoice& gauge,
                             double c, const RegPhaseState& s) {
    const Vec2 d = s.u - detail::reg_A(gauge, s.v);
    return 0.5 * d.norm2() + reg_potential(sys, c, s.v);
}

// Physical-side twisted Hamiltonian H(q,p) = 0.5|p - A(q)|^2 + V(q).
inline double twisted_H(const SystemSpec& sys, const GaugeChoice& gauge,
                        const MomentumState& s) {
    const Vec2 d = s.p - gauge.A(s.q);
    return 0.5 * d.norm2() + potential_V(sys, s.q);
}

struct RegTrajectory {
    std::vector<RegPhaseState> samples;
    std::vector<double> hamiltonian_log;

    double max_drift() const {
        if (hamiltonian_log.empty()) return 0.0;
        double lo = hamiltonian_log[0], hi = lo;
        for (double e : hamiltonian_log) { lo = std::min(lo, e); hi = std::max(hi, e); }
        return hi - lo;
    }
};

// Hamiltonian flow of the regularized Hamiltonian on its zero level.
// Requires a constant magnetic field (symmetric gauge) for the analytic
// derivative of the pulled-back vector potential.
inline RegTrajectory integrate_regularized(const SystemSpec& sys,
                                           const GaugeChoice& gauge, double c,
                                           const RegPhaseState& s0,
                                           double tau_span,
                                           const IntegrateOptions& opt = {},
                                           double onshell_tol = 1e-8) {
    const double H0 = lc_hamiltonian(sys, gauge, c, s0);
    if (std::abs(H0) > onshell_tol)
        throw PreconditionError(
            "integrate_regularized: initial state is off the zero level");
    const double B = magnetic_B(sys);
    const double k = coulomb_strength_at_origin(sys);

    auto f = [&](double /*tau*/, const detail::State4& y) -> detail::State4 {
        const Point2 v{y[0], y[1]};
        const Vec2 u{y[2], y[3]};
        // A_reg(v) = -B |v|^2 i v in the symmetric gauge
        const double n2 = v.norm2();
        const Vec2 Areg{B * n2 * v.y, -B * n2 * v.x};
        const Vec2 w = u - Areg;   // = vdot
        // dA_reg/dv columns
        const Vec2 dA_dv1{2.0 * B * v.x * v.y, -B * (3.0 * v.x * v.x + v.y * v.y)};
        const Vec2 dA_dv2{B * (v.x * v.x + 3.0 * v.y * v.y), -2.0 * B * v.x * v.y};
        // gradient of the regularized potential
        Vec2 gV{-8.0 * c * v.x, -8.0 * c * v.y};
        if (n2 > 1e-300) {
            const std::complex<double> vc = to_complex(v);
            const Point2 q = from_complex(vc * vc);
            const double V1 = detail::smooth_V1(sys, q);
            const Vec2 g1 = detail::grad_smooth_V1(sys, q);
            // d/dv [4|v|^2 V1(v^2)] = 8 V1 v + 4|v|^2 (Dsq)^T g1
            const Vec2 chain{2.0 * v.x * g1.x + 2.0 * v.y * g1.y,
                             -2.0 * v.y * g1.x + 2.0 * v.x * g1.y};
            gV = gV + v * (8.0 * V1) + chain * (4.0 * n2);
        } else {
            (void)k;
        }
        const double udot1 = w.x * dA_dv1.x + w.y * dA_dv1.y - gV.x;
        const double udot2 = w.x * dA_dv2.x + w.y * dA_dv2.y - gV.y;
        return {w.x, w.y, udot1, udot2};
    };

    RegTrajectory traj;
    // track physical time as a quadrature alongside: augment via sampling
    double t_phys = s0.t;
    double tau_prev = s0.tau;
    Point2 v_prev = s0.v;
    auto push = [&](double tau, const detail::State4& y) {
        RegPhaseState s;
        s.v = {y[0], y[1]};
        s.u = {y[2], y[3]};
        s.tau = tau;
        // trapezoidal update of dt = 4|v|^2 dtau
        t_phys += (tau - tau_prev) * 2.0 * (v_prev.norm2() + s.v.norm2());
        tau_prev = tau;
        v_prev = s.v;
        s.t = t_phys;
        traj.samples.push_back(s);
        traj.hamiltonian_log.push_back(lc_hamiltonian(sys, gauge, c, s));
    };
    detail::State4 y0{s0.v.x, s0.v.y, s0.u.x, s0.u.y};
    push(s0.tau, y0);
    if (tau_span == 0.0) return traj;
    detail::dopri5(f, y0, s0.tau, s0.tau + tau_span, opt, nullptr,
                   [&](double tau, const detail::State4& y) {
                       push(tau, y);
                       return true;
                   });
    return traj;
}

// ---------------------------------------------------------------------------
// Stereographic momentum-sphere maps.
// ---------------------------------------------------------------------------

struct MoserChart {
    double r = 1.0;
};

// North-pole stereographic chart of the radius-r sphere.
inline std::array<double, 3> moser_stereographic(const MoserChart& chart, Vec2 p) {
    const double r = chart.r;
    const double d = p.norm2() + r * r;
    return {2.0 * r * r * p.x / d, 2.0 * r * r * p.y / d,
            r * (p.norm2() - r * r) / d};
}

// Transition between the two polar charts: p -> r^2 p / |p|^2.
inline Vec2 moser_transition(const MoserChart& chart, Vec2 p) {
    const double n2 = p.norm2();
    if (n2 < 1e-300)
        throw PreconditionError("moser_transition: p = 0");
    return p * (chart.r * chart.r / n2);
}

// Cotangent lift of the transition map.
inline std::pair<Vec2, Vec2> moser_cotangent_lift(const MoserChart& chart,
                                                  Vec2 p, Vec2 q) {
    const double n2 = p.norm2();
    if (n2 < 1e-300)
        throw PreconditionError("moser_cotangent_lift: p = 0");
    const double r2 = chart.r * chart.r;
    const Vec2 pt = p * (r2 / n2);
    const Vec2 qt = (q * n2 - p * (2.0 * dot(p, q))) / r2;
    return {pt, qt};
}

// K_c composed with the lifted chart transition, extended over p = 0.
// Here p plays the role of position on the momentum sphere and q the role of
// (negative) momentum.  Requires unit Coulomb strength at the origin.
inline double moser_K_c(const SystemSpec& sys, const GaugeChoice& gauge,
                        const MoserChart& chart, double c, Vec2 p, Vec2 q) {
    if (std::abs(coulomb_strength_at_origin(sys) - 1.0) > 1e-12)
        throw ConfigError("moser_K_c: system must have a unit Coulomb center");
    const double r2 = chart.r * chart.r;
    if (p.norm2() < 1e-300) return 0.5 * r2 * q.norm() - 1.0;
    auto [pt, qt] = moser_cotangent_lift(chart, p, q);
    const Vec2 Aq = gauge.A(qt);
    return 0.5 * r2 * q.norm() + q.norm() * dot(p, Aq) +
           (p.norm2() * q.norm() / r2) *
               (0.5 * Aq.norm2() + detail::smooth_V1(sys, qt) - c) -
           1.0;
}

} // namespace szplus
