// Periodic orbits by symmetric shooting, energy continuation, projection to
// plane curves, event detection along curve families, and the invariance
// check of the two curve invariants along a family.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "szplus/arrangement.hpp"
#include "szplus/curve.hpp"
#include "szplus/dynamics.hpp"
#include "szplus/invariants.hpp"

namespace szplus {

struct OrbitSolution {
    SystemSpec sys;
    double c = 0.0;            // energy
    PhaseState initial;        // perpendicular axis crossing: q2 = 0, qdot1 = 0
    double period = 0.0;
    double residual = 0.0;     // full-period closure error
    int crossing_index = 1;    // which axis crossing closes the half period
};

struct ShootingOptions {
    int crossing_index = 1;
    double vy_sign = 1.0;      // sign of the initial vertical velocity
    double tol = 1e-12;        // Newton tolerance on the half-period defect
    int max_newton = 60;
    double fd_dx = 1e-7;
    double t_max = 60.0;       // give up if no axis crossing happens
    IntegrateOptions integ{1e-13, 1e-13};
};

namespace detail {

struct HalfShot {
    double tau = 0.0;          // time of the selected axis crossing
    PhaseState at;             // state there
};

// Integrate from the perpendicular axis start and locate the k-th transverse
// crossing of {q2 = 0} using the dense interpolant.
inline HalfShot half_period_shot(const SystemSpec& sys, double c, double x,
                                 const ShootingOptions& opt) {
    const double V = potential_V(sys, {x, 0.0});
    const double v2 = 2.0 * (c - V);
    if (v2 <= 0.0)
        throw PreconditionError("shooting start outside the accessible region");
    PhaseState s0{{x, 0.0}, {0.0, opt.vy_sign * std::sqrt(v2)}, 0.0};
    IntegrateOptions io = opt.integ;
    io.store_dense = true;
    auto traj = integrate(sys, s0, opt.t_max, io);
    int found = 0;
    for (const auto& ds : traj.dense) {
        const double y0 = ds.eval(ds.t0)[1];
        const double y1 = ds.eval(ds.t0 + ds.h)[1];
        if (ds.t0 < 1e-9 && std::abs(y0) < 1e-14 && found == 0) {
            // starting point itself lies on the axis; skip its own step unless
            // the step ends on the other side after leaving
        }
        if ((y0 < 0.0) == (y1 < 0.0)) continue;
        if (ds.t0 + ds.h < 1e-6) continue;
        ++found;
        if (found < opt.crossing_index) continue;
        double lo = std::max(ds.t0, 1e-9), hi = ds.t0 + ds.h;
        // ensure sign difference on [lo, hi]
        if ((ds.eval(lo)[1] < 0.0) == (ds.eval(hi)[1] < 0.0)) { --found; continue; }
        for (int it = 0; it < 90; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((ds.eval(lo)[1] < 0.0) == (ds.eval(mid)[1] < 0.0)) lo = mid;
            else hi = mid;
        }
        const double tc = 0.5 * (lo + hi);
        const auto y = ds.eval(tc);
        return {tc, {{y[0], y[1]}, {y[2], y[3]}, tc}};
    }
    throw IntegrationError("no axis crossing found within the time budget");
}

} // namespace detail

// Symmetric shooting: Newton on the perpendicularity defect at the k-th axis
// crossing.  The reversal symmetry (q1, q2, qd1, qd2) -> (q1, -q2, -qd1, qd2)
// then closes the orbit over twice the half period.
inline OrbitSolution find_periodic_orbit(const SystemSpec& sys, double c,
                                         double x_guess,
                                         const ShootingOptions& opt = {}) {
    double x = x_guess;
    double best = 1e300;
    for (int it = 0; it < opt.max_newton; ++it) {
        const auto shot = detail::half_period_shot(sys, c, x, opt);
        const double F = shot.at.qdot.x;
        best = std::min(best, std::abs(F));
        if (std::abs(F) < opt.tol) break;
        const auto shot2 = detail::half_period_shot(sys, c, x + opt.fd_dx, opt);
        const double dF = (shot2.at.qdot.x - F) / opt.fd_dx;
        if (std::abs(dF) < 1e-300)
            throw IntegrationError("shooting derivative vanished");
        double step = -F / dF;
        const double cap = 0.1 * std::max(0.2, std::abs(x));
        if (std::abs(step) > cap) step = step > 0 ? cap : -cap;
        x += step;
        if (it + 1 == opt.max_newton) {
            std::ostringstream os;
            os << "shooting did not converge; best defect " << best;
            throw IntegrationError(os.str());
        }
    }
    const auto shot = detail::half_period_shot(sys, c, x, opt);
    OrbitSolution orb;
    orb.sys = sys;
    orb.c = c;
    orb.crossing_index = opt.crossing_index;
    const double V = potential_V(sys, {x, 0.0});
    orb.initial = {{x, 0.0}, {0.0, opt.vy_sign * std::sqrt(2.0 * (c - V))}, 0.0};
    orb.period = 2.0 * shot.tau;
    auto full = integrate(sys, orb.initial, orb.period, opt.integ);
    const auto& e = full.samples.back();
    orb.residual = dist(e.q, orb.initial.q) + dist(e.qdot, orb.initial.qdot);
    return orb;
}

struct FamilyMember {
    OrbitSolution orbit;
    PolyCurve curve;
    InvariantSet invariants;
};

// Sample the orbit over one period and resample to a closed polyline.
inline PolyCurve project_to_curve(const OrbitSolution& orbit,
                                  std::size_t n_samples = 256,
                                  const CurveTolerances& tol = {}) {
    IntegrateOptions io{1e-12, 1e-12};
    io.sample_dt = orbit.period / static_cast<double>(4 * n_samples);
    auto traj = integrate(orbit.sys, orbit.initial, orbit.period, io);
    std::vector<Point2> pts;
    pts.reserve(traj.samples.size());
    for (const auto& s : traj.samples) pts.push_back(s.q);
    // drop the closing duplicate if present
    while (pts.size() > 8 && dist(pts.back(), pts.front()) <
                                 1e-6 * curve_diameter(pts))
        pts.pop_back();
    PolyCurve k;
    k.vertices = resample_closed(pts, n_samples);
    auto rep = validate_genericity(k, tol);
    if (!rep.is_generic)
        throw GenericityError(
            "project_to_curve: projection is not generic at this member");
    return k;
}

// Natural-parameter continuation in the energy with step halving.
inline std::vector<OrbitSolution> continue_family(const SystemSpec& sys,
                                                  const OrbitSolution& start,
                                                  double c_target,
                                                  std::size_t min_members = 30,
                                                  const ShootingOptions& base = {}) {
    std::vector<OrbitSolution> fam{start};
    const double span = c_target - start.c;
    if (span == 0.0) return fam;
    double dc = span / static_cast<double>(
                           std::max<std::size_t>(min_members - 1, 1));
    double c = start.c;
    double x = start.initial.q.x;
    int halvings = 0;
    while ((span > 0 ? c < c_target - 1e-12 : c > c_target + 1e-12)) {
        const double c_next = (span > 0) ? std::min(c + dc, c_target)
                                         : std::max(c + dc, c_target);
        try {
            ShootingOptions opt = base;
            opt.vy_sign = start.initial.qdot.y >= 0 ? 1.0 : -1.0;
            opt.crossing_index = start.crossing_index;
            auto orb = find_periodic_orbit(sys, c_next, x, opt);
            fam.push_back(orb);
            c = c_next;
            x = orb.initial.q.x;
            halvings = 0;
        } catch (const IntegrationError&) {
            dc *= 0.5;
            if (++halvings > 20)
                throw IntegrationError(
                    "continuation stalled: fold beyond step control");
        }
    }
    return fam;
}

// Local model q(t) = (a t + t^2) + i (b t + t^3): sign of 3a^2 + 4b.
enum class LocalCuspModel { Loop, Cusp, NoLoop };

inline LocalCuspModel cusp_discriminant(double a, double b, double tol = 1e-12) {
    const double d = 3.0 * a * a + 4.0 * b;
    if (std::abs(d) <= tol) return LocalCuspModel::Cusp;
    return d < 0.0 ? LocalCuspModel::Loop : LocalCuspModel::NoLoop;
}

// ---------------------------------------------------------------------------
// Event detection along a one-parameter curve family.
// ---------------------------------------------------------------------------

using CurveFamily = std::function<PolyCurve(double)>;

namespace detail {

struct CurveSig {
    std::size_t n = 0;
    int w0 = 0;
    int rot = 0;
    std::vector<int> faces;   // sorted winding multiset

    bool operator==(const CurveSig&) const = default;
};

inline CurveSig curve_signature(const PolyCurve& k, const CurveTolerances& tol) {
    CurveSig s;
    const auto arr = build_arrangement(k, tol);
    s.n = arr.vertices.size();
    s.w0 = winding_around_origin(k, tol);
    s.rot = rotation_number(k);
    s.faces = arr.winding_multiset();
    return s;
}

// evaluate the signature, nudging the parameter if the member is non-generic
inline CurveSig sig_at(const CurveFamily& fam, double& s, double nudge,
                       const CurveTolerances& tol) {
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            return curve_signature(fam(s), tol);
        } catch (const std::runtime_error&) {
            s += nudge * (attempt + 1);
        }
    }
    throw GenericityError("curve family not generic near requested parameter");
}

inline Vec2 edge_dir(const PolyCurve& k, std::size_t seg) {
    const std::size_t m = k.vertices.size();
    return normalized(k.vertices[(seg + 1) % m] - k.vertices[seg]);
}

// classify a refined bracket by comparing the two end curves
inline EventRecord classify_bracket(const CurveFamily& fam, double lo, double hi,
                                    const CurveSig& sa, const CurveSig& sb,
                                    const CurveTolerances& tol) {
    EventRecord ev;
    ev.param_before = lo;
    ev.param_after = hi;
    ev.delta_n = static_cast<int>(sb.n) - static_cast<int>(sa.n);
    ev.delta_w0 = sb.w0 - sa.w0;
    ev.delta_rotation = sb.rot - sa.rot;
    if (std::abs(ev.delta_n) == 1) {
        if (std::abs(ev.delta_w0) == 2) ev.kind = EventRecord::Kind::I0;
        else if (ev.delta_w0 == 0 && std::abs(ev.delta_rotation) == 1)
            ev.kind = EventRecord::Kind::IInf;
        else
            throw GenericityError("unclassifiable odd crossing-number event");
        return ev;
    }
    if (std::abs(ev.delta_n) == 2) {
        if (ev.delta_w0 == 0 && std::abs(ev.delta_rotation) == 2) {
            // a symmetric pair of simultaneous zero-velocity passages (each
            // contributes +-1 to the rotation number, which tangency events
            // leave unchanged)
            ev.kind = EventRecord::Kind::IInf;
            return ev;
        }
        // self-tangency: inspect the newborn crossing pair on the richer side
        const PolyCurve before = fam(ev.delta_n > 0 ? lo : hi);
        const PolyCurve after = fam(ev.delta_n > 0 ? hi : lo);
        const auto dp_b = double_points(before, tol);
        const auto dp_a = double_points(after, tol);
        // the two crossings farthest from any old crossing are the new pair
        double best_d = -1.0;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < dp_a.size(); ++i) {
            double nearest = 1e300;
            for (const auto& o : dp_b)
                nearest = std::min(nearest, dist(dp_a[i].position, o.position));
            if (dp_b.empty()) nearest = 0.0;
            if (nearest > best_d) { best_d = nearest; best_i = i; }
        }
        const auto& dp = dp_a[best_i];
        const double align = dot(edge_dir(after, dp.seg_a),
                                 edge_dir(after, dp.seg_b));
        ev.kind = align > 0.0 ? EventRecord::Kind::DirectTangency
                              : EventRecord::Kind::IIPlus;
        return ev;
    }
    if (ev.delta_n == 0 && sa.faces != sb.faces) {
        ev.kind = EventRecord::Kind::III;
        return ev;
    }
    throw GenericityError("unclassifiable event signature");
}

} // namespace detail

// Scan [lo, hi] in panels and bisect every signature change down to
// `param_tol`.  A polyline family resolves one smooth event into a short run
// of nearby signature changes (e.g. the origin leaves the shrinking loop a
// little before the loop's crossing disappears), so refined changes closer
// than `merge_tol` are coalesced and the merged bracket is classified as one
// event.  Pass merge_tol = 0 to classify every raw change separately.
inline std::vector<EventRecord> detect_events(const CurveFamily& fam, double lo,
                                              double hi, std::size_t panels = 32,
                                              double param_tol = 1e-6,
                                              const CurveTolerances& ctol = {},
                                              double merge_tol = -1.0) {
    if (merge_tol < 0.0) merge_tol = (hi - lo) / 16.0;

    struct Bracket {
        double l, h;
        detail::CurveSig sl, sh;
    };
    std::vector<Bracket> raw;

    const double step = (hi - lo) / static_cast<double>(panels);
    const double nudge = 1e-4 * step;
    double a = lo;
    auto sig_a = detail::sig_at(fam, a, nudge, ctol);
    for (std::size_t i = 0; i < panels; ++i) {
        double b = std::min(lo + step * static_cast<double>(i + 1), hi);
        auto sig_b = detail::sig_at(fam, b, -nudge, ctol);
        // refine every change inside the panel, front to back
        double l0 = a;
        auto s0 = sig_a;
        while (!(s0 == sig_b)) {
            double l = l0, h = b;
            auto sl = s0, sh = sig_b;
            int guard = 0;
            while (h - l > param_tol && ++guard < 90) {
                const double mid = 0.5 * (l + h);
                double m = mid;
                bool got = false;
                detail::CurveSig sm;
                for (int att = 0; att < 8 && !got; ++att) {
                    try {
                        sm = detail::curve_signature(fam(m), ctol);
                        got = true;
                    } catch (const std::runtime_error&) {
                        // stay strictly inside (l, h) while dodging the
                        // non-generic parameter
                        m = mid + (h - l) * 0.04 * (att + 1) *
                                      ((att % 2) ? -1.0 : 1.0);
                    }
                }
                if (!got) break;
                if (sm == sl) l = m;
                else { h = m; sh = sm; }
            }
            raw.push_back({l, h, sl, sh});
            if (raw.size() > 200)
                throw GenericityError(
                    "detect_events: too many signature changes; family looks "
                    "degenerate at this resolution");
            l0 = h;
            s0 = sh;
        }
        a = b;
        sig_a = sig_b;
    }

    // coalesce runs of nearby changes, then classify each merged bracket
    std::vector<EventRecord> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i;
        while (j + 1 < raw.size() && raw[j + 1].l - raw[j].h < merge_tol) ++j;
        out.push_back(detail::classify_bracket(fam, raw[i].l, raw[j].h,
                                               raw[i].sl, raw[j].sh, ctol));
        i = j + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constancy of the two invariants along a family.
// ---------------------------------------------------------------------------

struct TheoremAReport {
    bool invariants_constant = false;   // geometric J1, J2 equal on all members
    bool tracked_matches = false;       // event-tracked J+ equals geometric J+
    bool direct_tangency_flagged = false;
    std::vector<InvariantSet> geometric;
    std::vector<InvariantSet> tracked;
};

inline TheoremAReport verify_family_invariants(
    const std::vector<PolyCurve>& members,
    const std::vector<std::vector<EventRecord>>& events,
    const CurveTolerances& tol = {}) {
    if (members.empty())
        throw PreconditionError("verify_family_invariants: empty family");
    TheoremAReport rep;
    rep.geometric.reserve(members.size());
    for (const auto& k : members)
        rep.geometric.push_back(invariants_geometric(k, tol));
    rep.tracked = j_plus_tracked(members, rep.geometric.front(), events, tol);

    rep.invariants_constant = true;
    for (const auto& g : rep.geometric)
        if (g.two_j1 != rep.geometric.front().two_j1 ||
            g.j2 != rep.geometric.front().j2)
            rep.invariants_constant = false;

    rep.tracked_matches = true;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (rep.tracked[i].j_plus != rep.geometric[i].j_plus)
            rep.tracked_matches = false;

    for (const auto& evs : events)
        for (const auto& ev : evs)
            if (ev.kind == EventRecord::Kind::DirectTangency)
                rep.direct_tangency_flagged = true;
    return rep;
}

} // namespace szplus
