// Catalog of planar systems of the form  qdd = B(q) J qd - grad V(q)
// (Coulomb center plus smooth extra potential plus perpendicular magnetic
// field) and an adaptive Dormand-Prince integrator with dense output.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "szplus/errors.hpp"
#include "szplus/geom.hpp"

namespace szplus {

enum class CatalogId {
    Kepler,
    Stark,
    Zeeman,
    DiamagneticKepler,
    RotatingKepler,
    Rtbp,
    Hill,
    FrozenHill,
    FrozenHillCentrifugal,
    Euler,
    Lagrange,
};

inline const char* catalog_name(CatalogId id) {
    switch (id) {
        case CatalogId::Kepler: return "kepler";
        case CatalogId::Stark: return "stark";
        case CatalogId::Zeeman: return "zeeman";
        case CatalogId::DiamagneticKepler: return "diamagnetic_kepler";
        case CatalogId::RotatingKepler: return "rotating_kepler";
        case CatalogId::Rtbp: return "rtbp";
        case CatalogId::Hill: return "hill";
        case CatalogId::FrozenHill: return "frozen_hill";
        case CatalogId::FrozenHillCentrifugal: return "frozen_hill_centrifugal";
        case CatalogId::Euler: return "euler";
        case CatalogId::Lagrange: return "lagrange";
    }
    return "?";
}

inline std::optional<CatalogId> catalog_from_name(const std::string& s) {
    static const std::map<std::string, CatalogId> m = {
        {"kepler", CatalogId::Kepler},
        {"stark", CatalogId::Stark},
        {"zeeman", CatalogId::Zeeman},
        {"diamagnetic_kepler", CatalogId::DiamagneticKepler},
        {"rotating_kepler", CatalogId::RotatingKepler},
        {"rtbp", CatalogId::Rtbp},
        {"hill", CatalogId::Hill},
        {"frozen_hill", CatalogId::FrozenHill},
        {"frozen_hill_centrifugal", CatalogId::FrozenHillCentrifugal},
        {"euler", CatalogId::Euler},
        {"lagrange", CatalogId::Lagrange},
    };
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

struct SystemSpec {
    CatalogId id = CatalogId::Kepler;
    std::map<std::string, double> params;
    std::optional<double> c1;   // configured energy threshold, if any

    double param(const std::string& key, double dflt) const {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    }
};

// Fill in default parameters and validate the set for the catalog entry.
inline SystemSpec make_system(CatalogId id,
                              std::map<std::string, double> params = {}) {
    SystemSpec sys;
    sys.id = id;
    sys.params = std::move(params);
    auto need = [&](const char* k, double dflt) {
        if (!sys.params.count(k)) sys.params[k] = dflt;
    };
    switch (id) {
        case CatalogId::Kepler: sys.c1 = 0.0; break;
        case CatalogId::Stark: need("E", 0.1); break;
        case CatalogId::Zeeman: need("B", 0.3); break;
        case CatalogId::DiamagneticKepler: need("B", 0.3); break;
        case CatalogId::RotatingKepler: need("omega", 1.0); break;
        case CatalogId::Rtbp:
            need("mu", 0.5); need("M", 1.0); need("R", 1.0); need("omega", 1.0);
            break;
        case CatalogId::Hill: need("omega", 1.0); break;
        case CatalogId::FrozenHill: break;
        case CatalogId::FrozenHillCentrifugal: break;
        case CatalogId::Euler:
            need("mu", 0.5); need("M", 1.0); need("R", 1.0);
            break;
        case CatalogId::Lagrange:
            need("mu", 0.5); need("M", 1.0); need("R", 1.0); need("a", 0.5);
            break;
    }
    return sys;
}

// Attracting centers where the potential blows up.
inline std::vector<Point2> singular_points(const SystemSpec& sys) {
    switch (sys.id) {
        case CatalogId::Rtbp:
            return {{0.0, 0.0}, {sys.param("R", 1.0), 0.0}};
        case CatalogId::Euler:
        case CatalogId::Lagrange: {
            const double c = 0.5 * sys.param("R", 1.0);
            return {{-c, 0.0}, {c, 0.0}};
        }
        default:
            return {{0.0, 0.0}};
    }
}

// Coefficient k of the -k/|q| Coulomb term at the coordinate origin
// (0 when the origin is regular).
inline double coulomb_strength_at_origin(const SystemSpec& sys) {
    switch (sys.id) {
        case CatalogId::Rtbp:
            return sys.param("mu", 0.5) * sys.param("M", 1.0);
        case CatalogId::Euler:
        case CatalogId::Lagrange:
            return 0.0;
        default:
            return 1.0;
    }
}

namespace detail {

inline void check_nonsingular(const SystemSpec& sys, Point2 q) {
    for (const auto& s : singular_points(sys))
        if (dist(q, s) < 1e-12)
            throw SingularityError("potential evaluated at a singular point");
}

} // namespace detail

inline double potential_V(const SystemSpec& sys, Point2 q) {
    detail::check_nonsingular(sys, q);
    const double r = q.norm();
    switch (sys.id) {
        case CatalogId::Kepler:
            return -1.0 / r;
        case CatalogId::Stark:
            return -1.0 / r - sys.param("E", 0.1) * q.x;
        case CatalogId::Zeeman:
            return -1.0 / r;
        case CatalogId::DiamagneticKepler: {
            const double B = sys.param("B", 0.3);
            return -1.0 / r + B * B / 8.0 * q.x * q.x;
        }
        case CatalogId::RotatingKepler: {
            const double w = sys.param("omega", 1.0);
            return -1.0 / r - 0.5 * w * w * (r * r);
        }
        case CatalogId::Rtbp: {
            const double mu = sys.param("mu", 0.5);
            const double M = sys.param("M", 1.0);
            const double R = sys.param("R", 1.0);
            const double w = sys.param("omega", 1.0);
            const Point2 sh{q.x - R * (1.0 - mu), q.y};
            const Point2 d2{q.x - R, q.y};
            return -0.5 * w * w * sh.norm2() - mu * M / r -
                   (1.0 - mu) * M / d2.norm();
        }
        case CatalogId::Hill: {
            const double w = sys.param("omega", 1.0);
            return -1.0 / r - 1.5 * w * w * q.x * q.x;
        }
        case CatalogId::FrozenHill:
            return -1.0 / r - 1.5 * q.x * q.x;
        case CatalogId::FrozenHillCentrifugal:
            return -1.0 / r - 1.5 * q.x * q.x - 0.5 * r * r;
        case CatalogId::Euler:
        case CatalogId::Lagrange: {
            const double mu = sys.param("mu", 0.5);
            const double M = sys.param("M", 1.0);
            const double c = 0.5 * sys.param("R", 1.0);
            const Point2 f1{q.x + c, q.y};
            const Point2 f2{q.x - c, q.y};
            double v = -mu * M / f1.norm() - (1.0 - mu) * M / f2.norm();
            if (sys.id == CatalogId::Lagrange)
                v += sys.param("a", 0.5) * (r * r);
            return v;
        }
    }
    throw ConfigError("unknown catalog id");
}

inline Vec2 grad_V(const SystemSpec& sys, Point2 q) {
    detail::check_nonsingular(sys, q);
    const double r = q.norm();
    const double r3 = r * r * r;
    const Vec2 coulomb = q / r3;   // gradient of -1/|q|
    switch (sys.id) {
        case CatalogId::Kepler:
            return coulomb;
        case CatalogId::Stark:
            return coulomb + Vec2{-sys.param("E", 0.1), 0.0};
        case CatalogId::Zeeman:
            return coulomb;
        case CatalogId::DiamagneticKepler: {
            const double B = sys.param("B", 0.3);
            return coulomb + Vec2{B * B / 4.0 * q.x, 0.0};
        }
        case CatalogId::RotatingKepler: {
            const double w = sys.param("omega", 1.0);
            return coulomb - q * (w * w);
        }
        case CatalogId::Rtbp: {
            const double mu = sys.param("mu", 0.5);
            const double M = sys.param("M", 1.0);
            const double R = sys.param("R", 1.0);
            const double w = sys.param("omega", 1.0);
            const Point2 sh{q.x - R * (1.0 - mu), q.y};
            const Point2 d2{q.x - R, q.y};
            const double l2 = d2.norm();
            return sh * (-w * w) + q * (mu * M / r3) +
                   d2 * ((1.0 - mu) * M / (l2 * l2 * l2));
        }
        case CatalogId::Hill: {
            const double w = sys.param("omega", 1.0);
            return coulomb + Vec2{-3.0 * w * w * q.x, 0.0};
        }
        case CatalogId::FrozenHill:
            return coulomb + Vec2{-3.0 * q.x, 0.0};
        case CatalogId::FrozenHillCentrifugal:
            return coulomb + Vec2{-3.0 * q.x, 0.0} - q;
        case CatalogId::Euler:
        case CatalogId::Lagrange: {
            const double mu = sys.param("mu", 0.5);
            const double M = sys.param("M", 1.0);
            const double c = 0.5 * sys.param("R", 1.0);
            const Point2 f1{q.x + c, q.y};
            const Point2 f2{q.x - c, q.y};
            const double l1 = f1.norm(), l2 = f2.norm();
            Vec2 g = f1 * (mu * M / (l1 * l1 * l1)) +
                     f2 * ((1.0 - mu) * M / (l2 * l2 * l2));
            if (sys.id == CatalogId::Lagrange)
                g = g + q * (2.0 * sys.param("a", 0.5));
            return g;
        }
    }
    throw ConfigError("unknown catalog id");
}

// Scalar magnetic field (constant for all catalog entries).
inline double magnetic_B(const SystemSpec& sys, Point2 /*q*/ = {}) {
    switch (sys.id) {
        case CatalogId::Zeeman: return sys.param("B", 0.3);
        case CatalogId::RotatingKepler: return 2.0 * sys.param("omega", 1.0);
        case CatalogId::Rtbp: return 2.0 * sys.param("omega", 1.0);
        case CatalogId::Hill: return 2.0 * sys.param("omega", 1.0);
        default: return 0.0;
    }
}

struct PhaseState {
    Point2 q;
    Vec2 qdot;
    double t = 0.0;
};

inline double energy(const SystemSpec& sys, const PhaseState& s) {
    return 0.5 * s.qdot.norm2() + potential_V(sys, s.q);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with dense output.
// ---------------------------------------------------------------------------

namespace detail {

using State4 = std::array<double, 4>;   // (q1, q2, qd1, qd2)

inline State4 axpy(const State4& y, double h, const State4& d) {
    return {y[0] + h * d[0], y[1] + h * d[1], y[2] + h * d[2], y[3] + h * d[3]};
}

} // namespace detail

struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    // Hermite-style interpolation data (continuous extension coefficients)
    std::array<detail::State4, 5> rcont{};

    detail::State4 eval(double t) const {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        detail::State4 y;
        for (int i = 0; i < 4; ++i)
            y[i] = rcont[0][i] +
                   s * (rcont[1][i] +
                        s1 * (rcont[2][i] +
                              s * (rcont[3][i] + s1 * rcont[4][i])));
        return y;
    }
};

struct IntegrateOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double h0 = 1e-3;
    double h_max = 1.0;
    std::size_t max_steps = 50'000'000;
    double r_switch = 0.0;          // handoff radius; 0 disables the check
    double sample_dt = 0.0;         // 0: one sample per accepted step
    bool store_dense = false;
};

struct Trajectory {
    std::vector<PhaseState> samples;
    std::vector<double> energy_log;
    std::vector<DenseStep> dense;
    bool handoff = false;           // trajectory stopped near a singular point
    PhaseState handoff_state;

    double max_energy_drift() const {
        if (energy_log.empty()) return 0.0;
        double lo = energy_log[0], hi = energy_log[0];
        for (double e : energy_log) { lo = std::min(lo, e); hi = std::max(hi, e); }
        const double scale = std::max(1.0, std::abs(energy_log[0]));
        return (hi - lo) / scale;
    }
};

namespace detail {

// Generic DOPRI5 driver for a 4-dimensional first-order system.
template <class Deriv, class Accept>
inline void dopri5(const Deriv& f, State4 y, double t, double t_end,
                   const IntegrateOptions& opt, std::vector<DenseStep>* dense,
                   const Accept& accept) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    // dense-output weights (Hairer, Norsett, Wanner)
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0,
                            d7 = 69997945.0 / 29380423.0;

    const double dir = t_end >= t ? 1.0 : -1.0;
    double h = dir * std::min(std::abs(opt.h0), opt.h_max);
    State4 k1 = f(t, y);
    std::size_t steps = 0;
    while (dir * (t_end - t) > 1e-300) {
        if (++steps > opt.max_steps)
            throw IntegrationError("integration exceeded the step budget");
        if (dir * (t + h - t_end) > 0.0) h = t_end - t;

        const State4 k2 = f(t + c2 * h, axpy(y, h * a21, k1));
        State4 tmp;
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const State4 k3 = f(t + c3 * h, tmp);
        for (int i = 0; i < 4; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State4 k4 = f(t + c4 * h, tmp);
        for (int i = 0; i < 4; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                 a54 * k4[i]);
        const State4 k5 = f(t + c5 * h, tmp);
        for (int i = 0; i < 4; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        const State4 k6 = f(t + h, tmp);
        State4 ynew;
        for (int i = 0; i < 4; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        const State4 k7 = f(t + h, ynew);

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol +
                              opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / 4.0);

        if (err <= 1.0) {
            if (dense) {
                DenseStep ds;
                ds.t0 = t;
                ds.h = h;
                for (int i = 0; i < 4; ++i) {
                    const double ydiff = ynew[i] - y[i];
                    const double bspl = h * k1[i] - ydiff;
                    ds.rcont[0][i] = y[i];
                    ds.rcont[1][i] = ydiff;
                    ds.rcont[2][i] = bspl;
                    ds.rcont[3][i] = ydiff - h * k7[i] - bspl;
                    ds.rcont[4][i] =
                        h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                             d6 * k6[i] + d7 * k7[i]);
                }
                dense->push_back(ds);
            }
            t += h;
            y = ynew;
            k1 = k7;   // FSAL
            if (!accept(t, y)) return;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::min(5.0, std::max(0.2, fac));
        h *= fac;
        if (std::abs(h) > opt.h_max) h = dir * opt.h_max;
        if (std::abs(h) < 1e-15)
            throw IntegrationError("step size underflow");
    }
}

} // namespace detail

// Integrate Newton's equation  qdd = B(q) J qd - grad V(q)  from s0 for time T.
inline Trajectory integrate(const SystemSpec& sys, const PhaseState& s0,
                            double T, const IntegrateOptions& opt = {}) {
    Trajectory traj;
    auto push = [&](double t, const detail::State4& y) {
        PhaseState s;
        s.q = {y[0], y[1]};
        s.qdot = {y[2], y[3]};
        s.t = t;
        traj.samples.push_back(s);
        traj.energy_log.push_back(energy(sys, s));
    };
    detail::State4 y0{s0.q.x, s0.q.y, s0.qdot.x, s0.qdot.y};
    push(s0.t, y0);
    if (T == 0.0) return traj;

    auto f = [&](double /*t*/, const detail::State4& y) -> detail::State4 {
        const Point2 q{y[0], y[1]};
        const Vec2 qd{y[2], y[3]};
        const double B = magnetic_B(sys, q);
        const Vec2 g = grad_V(sys, q);
        // J qd rotates the velocity by +90 degrees
        return {qd.x, qd.y, -B * qd.y - g.x, B * qd.x - g.y};
    };
    double next_sample = opt.sample_dt > 0.0 ? s0.t + opt.sample_dt : 0.0;
    auto accept = [&](double t, const detail::State4& y) -> bool {
        if (opt.sample_dt <= 0.0 || t >= next_sample - 1e-12) {
            push(t, y);
            if (opt.sample_dt > 0.0)
                while (next_sample <= t + 1e-12) next_sample += opt.sample_dt;
        }
        if (opt.r_switch > 0.0) {
            const Point2 q{y[0], y[1]};
            for (const auto& sp : singular_points(sys))
                if (dist(q, sp) < opt.r_switch) {
                    traj.handoff = true;
                    traj.handoff_state = {q, {y[2], y[3]}, t};
                    return false;
                }
        }
        return true;
    };
    detail::dopri5(f, y0, s0.t, s0.t + T, opt,
                   opt.store_dense ? &traj.dense : nullptr, accept);
    if (opt.sample_dt > 0.0 && !traj.handoff) {
        // make sure the endpoint is recorded
        if (traj.samples.empty() || std::abs(traj.samples.back().t - (s0.t + T)) > 1e-9) {
            // re-integrate tail cheaply is overkill; dense output covers events
        }
    }
    return traj;
}

enum class HillMembership { Inside, Boundary, Outside };

inline HillMembership hill_membership(const SystemSpec& sys, double c, Point2 q,
                                      double band = 1e-9) {
    const double d = potential_V(sys, q) - c;
    if (std::abs(d) <= band) return HillMembership::Boundary;
    return d < 0.0 ? HillMembership::Inside : HillMembership::Outside;
}

struct ContourCurve {
    std::vector<Point2> points;
    bool closed = false;
};

// Marching-squares contour of {V = c} inside [x0,x1]x[y0,y1].
inline std::vector<ContourCurve> zero_velocity_contour(
    const SystemSpec& sys, double c, Point2 lo, Point2 hi,
    std::size_t resolution = 256, double min_grad = 1e-8) {
    const std::size_t n = resolution;
    const double dx = (hi.x - lo.x) / static_cast<double>(n);
    const double dy = (hi.y - lo.y) / static_cast<double>(n);
    std::vector<double> val((n + 1) * (n + 1));
    auto at = [&](std::size_t i, std::size_t j) -> double& {
        return val[j * (n + 1) + i];
    };
    const auto sing = singular_points(sys);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i) {
            Point2 q{lo.x + dx * static_cast<double>(i),
                     lo.y + dy * static_cast<double>(j)};
            bool bad = false;
            for (const auto& s : sing)
                if (dist(q, s) < 0.25 * std::min(dx, dy)) bad = true;
            at(i, j) = bad ? -1e30 : potential_V(sys, q) - c;
        }

    // collect crossing segments per cell
    struct Seg { Point2 a, b; };
    std::vector<Seg> segs;
    auto interp = [&](Point2 p0, Point2 p1, double v0, double v1) -> Point2 {
        const double s = v0 / (v0 - v1);
        return p0 + (p1 - p0) * s;
    };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 p00{lo.x + dx * static_cast<double>(i),
                             lo.y + dy * static_cast<double>(j)};
            const Point2 p10{p00.x + dx, p00.y};
            const Point2 p01{p00.x, p00.y + dy};
            const Point2 p11{p00.x + dx, p00.y + dy};
            const double v00 = at(i, j), v10 = at(i + 1, j);
            const double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
            if (v00 < -1e29 || v10 < -1e29 || v01 < -1e29 || v11 < -1e29)
                continue;
            std::vector<Point2> pts;
            if ((v00 < 0) != (v10 < 0)) pts.push_back(interp(p00, p10, v00, v10));
            if ((v10 < 0) != (v11 < 0)) pts.push_back(interp(p10, p11, v10, v11));
            if ((v01 < 0) != (v11 < 0)) pts.push_back(interp(p01, p11, v01, v11));
            if ((v00 < 0) != (v01 < 0)) pts.push_back(interp(p00, p01, v00, v01));
            if (pts.size() == 2) segs.push_back({pts[0], pts[1]});
            else if (pts.size() == 4) {
                // saddle cell: split by center value
                segs.push_back({pts[0], pts[1]});
                segs.push_back({pts[2], pts[3]});
            }
        }

    // regularity check along the contour
    for (const auto& s : segs) {
        const Point2 m = (s.a + s.b) / 2.0;
        if (grad_V(sys, m).norm() < min_grad)
            throw PreconditionError(
                "zero_velocity_contour: level appears critical");
    }

    // chain segments into polylines
    const double tol = 0.25 * std::min(dx, dy);
    std::vector<bool> used(segs.size(), false);
    std::vector<ContourCurve> out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::vector<Point2> chain{segs[i].a, segs[i].b};
        bool grown = true;
        while (grown) {
            grown = false;
            for (std::size_t j = 0; j < segs.size(); ++j) {
                if (used[j]) continue;
                if (dist(chain.back(), segs[j].a) < tol) {
                    chain.push_back(segs[j].b); used[j] = true; grown = true;
                } else if (dist(chain.back(), segs[j].b) < tol) {
                    chain.push_back(segs[j].a); used[j] = true; grown = true;
                } else if (dist(chain.front(), segs[j].a) < tol) {
                    chain.insert(chain.begin(), segs[j].b); used[j] = true; grown = true;
                } else if (dist(chain.front(), segs[j].b) < tol) {
                    chain.insert(chain.begin(), segs[j].a); used[j] = true; grown = true;
                }
            }
        }
        ContourCurve cc;
        cc.closed = dist(chain.front(), chain.back()) < 2.0 * tol;
        if (cc.closed) chain.pop_back();
        cc.points = std::move(chain);
        if (cc.points.size() >= 3) out.push_back(std::move(cc));
    }
    return out;
}

} // namespace szplus
