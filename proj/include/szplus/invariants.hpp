#pragma once

// Plane-curve invariants: J+, the origin-winding combination, and the
// invariant of the Levi-Civita preimage.
//
// J+ is computed by a region-winding formula evaluated on the orientation-
// respecting smoothing of the curve: smoothing every double point yields
// disjoint embedded circles; with W_i the winding number just inside circle i
// and c_i its number of immediate children in the nesting forest,
//
//     J+(K) = 1 + n - sum_i (1 - c_i) * W_i^2,
//
// where n is the number of double points.  The formula is validated against
// the move-program oracle over the whole synthetic corpus.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "szplus/curve.hpp"

namespace szplus {

struct InvariantSet {
    long j_plus = 0;       // even
    int w0 = 0;            // winding around the origin
    long two_j1 = 0;       // 2 * J1 (kept integral; J1 itself is a half-integer)
    long j2 = 0;           // even
    bool odd_parity = false;
    enum class Method { Oracle, Geometric, Tracked } method = Method::Geometric;

    double j1() const { return 0.5 * static_cast<double>(two_j1); }
};

// ---------------------------------------------------------------------------
// Seifert smoothing

namespace detail {

struct SmoothedCircle {
    std::vector<Point2> points;   // closed polyline
    int orientation = 0;          // +1 CCW, -1 CW
};

// Orientation-respecting smoothing of all double points: returns the embedded
// circles as closed polylines (they may share corner points at the former
// crossings, which is harmless for the winding queries below).
inline std::vector<SmoothedCircle> seifert_smooth(const PolyCurve& curve,
                                                  const std::vector<DoublePoint>& dps) {
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    const auto cum = cumulative_arclength(v);

    if (dps.empty()) {
        SmoothedCircle c;
        c.points = v;
        c.orientation = signed_area(v) > 0.0 ? 1 : -1;
        return {c};
    }

    struct Pass { double param; std::size_t vertex; };
    std::vector<Pass> passes;
    for (std::size_t k = 0; k < dps.size(); ++k) {
        passes.push_back({dps[k].param_a, k});
        passes.push_back({dps[k].param_b, k});
    }
    std::sort(passes.begin(), passes.end(),
              [](const Pass& a, const Pass& b) { return a.param < b.param; });
    const std::size_t np = passes.size();

    // partner pass of pass k: the other visit of the same double point
    std::vector<std::size_t> partner(np);
    {
        std::vector<std::vector<std::size_t>> by_vertex(dps.size());
        for (std::size_t k = 0; k < np; ++k) by_vertex[passes[k].vertex].push_back(k);
        for (const auto& pr : by_vertex) {
            partner[pr[0]] = pr[1];
            partner[pr[1]] = pr[0];
        }
    }

    // arc k runs from pass k to pass (k+1) % np; collect its geometry
    std::vector<std::vector<Point2>> arc_pts(np);
    const double L = cum[n];
    for (std::size_t k = 0; k < np; ++k) {
        const Pass& p0 = passes[k];
        const Pass& p1 = passes[(k + 1) % np];
        auto& pts = arc_pts[k];
        pts.push_back(dps[p0.vertex].position);
        auto push_range = [&](double lo, double hi) {
            auto it = std::upper_bound(cum.begin(), cum.begin() + n, lo);
            for (; it != cum.begin() + n && *it < hi; ++it)
                pts.push_back(v[static_cast<std::size_t>(it - cum.begin()) % n]);
        };
        if (p1.param > p0.param) {
            push_range(p0.param, p1.param);
        } else {
            push_range(p0.param, L);
            pts.push_back(v[0]);
            push_range(0.0, p1.param);
        }
        pts.push_back(dps[p1.vertex].position);
    }

    // successor of arc k under smoothing: the arc leaving the partner pass
    std::vector<bool> used(np, false);
    std::vector<SmoothedCircle> circles;
    for (std::size_t k0 = 0; k0 < np; ++k0) {
        if (used[k0]) continue;
        SmoothedCircle circ;
        std::size_t k = k0;
        do {
            used[k] = true;
            for (const auto& p : arc_pts[k])
                if (circ.points.empty() || dist(circ.points.back(), p) > 1e-14)
                    circ.points.push_back(p);
            k = partner[(k + 1) % np];   // continue along the other branch
        } while (k != k0);
        if (!circ.points.empty() &&
            dist(circ.points.front(), circ.points.back()) < 1e-14)
            circ.points.pop_back();
        circ.orientation = signed_area(circ.points) > 0.0 ? 1 : -1;
        circles.push_back(std::move(circ));
    }
    return circles;
}

// A representative point on circle i kept clear of all other circles: the
// edge midpoint maximizing the distance to the other circles.
inline Point2 circle_test_point(const std::vector<SmoothedCircle>& circles, std::size_t i) {
    const auto& pts = circles[i].points;
    const std::size_t m = pts.size();
    const std::size_t stride = std::max<std::size_t>(1, m / 48);
    Point2 best = (pts[0] + pts[1 % m]) / 2.0;
    double best_d = -1.0;
    for (std::size_t k = 0; k < m; k += stride) {
        const Point2 cand = (pts[k] + pts[(k + 1) % m]) / 2.0;
        double d = std::numeric_limits<double>::max();
        for (std::size_t j = 0; j < circles.size(); ++j) {
            if (j == i) continue;
            const auto& q = circles[j].points;
            for (std::size_t e = 0; e < q.size(); ++e)
                d = std::min(d, point_segment_distance(cand, q[e], q[(e + 1) % q.size()]));
            if (d < best_d) break;
        }
        if (d > best_d) { best_d = d; best = cand; }
    }
    return best;
}

} // namespace detail

// Arnold's J+ of a generic curve (region-winding formula on the smoothing).
inline long j_plus_geometric(const PolyCurve& curve, const CurveTolerances& tol = {}) {
    const auto dps = double_points(curve, tol);
    const auto circles = detail::seifert_smooth(curve, dps);
    const std::size_t m = circles.size();

    std::vector<Point2> test(m);
    for (std::size_t i = 0; i < m; ++i) test[i] = detail::circle_test_point(circles, i);

    // containment: wind(S_j, test_i) for embedded circles is 0 or +-1
    std::vector<int> depth_winding(m, 0);
    std::vector<int> depth_count(m, 0);
    std::vector<std::vector<bool>> contains(m, std::vector<bool>(m, false));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            if (i == j) continue;
            const int w = winding_number_angle(circles[j].points, test[i]);
            if (w != 0) {
                contains[j][i] = true;
                depth_winding[i] += w;
                depth_count[i] += 1;
            }
        }
    }

    // children count: j is a child of i iff i contains j at depth exactly one more
    std::vector<int> children(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (contains[i][j] && depth_count[j] == depth_count[i] + 1)
                children[i] += 1;

    long sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const long w_inside = depth_winding[i] + circles[i].orientation;
        sum += (1 - children[i]) * w_inside * w_inside;
    }
    return 1 + static_cast<long>(dps.size()) - sum;
}

// ---------------------------------------------------------------------------
// Levi-Civita lift of curves

struct LiftResult {
    std::vector<PolyCurve> components;   // 1 (connected) or 2
    bool connected = false;
};

// Continuous square-root lift of an origin-avoiding closed curve.  The branch
// is propagated by continuity; for odd origin-winding the lift closes up after
// two traversals of the base, for even winding after one (with the second
// component the 180-degree rotation of the first).
inline LiftResult levi_civita_lift_curve(const PolyCurve& curve,
                                         const CurveTolerances& tol = {}) {
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    const double diam = curve_diameter(v);
    for (std::size_t i = 0; i < n; ++i) {
        if (point_segment_distance({0, 0}, v[i], v[(i + 1) % n]) < tol.eps0_rel * diam)
            throw ProximityError("levi_civita_lift_curve: curve passes through the origin");
    }

    // start the branch at the vertex of maximal |q| (keeps the numerically
    // delicate region away from the initial branch choice)
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i].norm2() > v[i0].norm2()) i0 = i;

    auto lift_step = [](const std::complex<double>& q, const std::complex<double>& prev) {
        std::complex<double> s = std::sqrt(q);
        if (std::norm(s - prev) > std::norm(s + prev)) s = -s;
        return s;
    };

    std::vector<Point2> lift;
    lift.reserve(2 * n);
    std::complex<double> cur = std::sqrt(to_complex(v[i0]));
    lift.push_back(from_complex(cur));
    for (std::size_t k = 1; k < n; ++k) {
        cur = lift_step(to_complex(v[(i0 + k) % n]), cur);
        lift.push_back(from_complex(cur));
    }
    const std::complex<double> around_once = lift_step(to_complex(v[i0]), cur);
    const bool connected = std::norm(around_once - std::complex<double>(lift[0].x, lift[0].y)) >
                           std::norm(around_once + std::complex<double>(lift[0].x, lift[0].y));

    LiftResult out;
    out.connected = connected;
    if (connected) {
        // second traversal on the opposite branch
        cur = around_once;
        lift.push_back(from_complex(cur));
        for (std::size_t k = 1; k < n; ++k) {
            cur = lift_step(to_complex(v[(i0 + k) % n]), cur);
            lift.push_back(from_complex(cur));
        }
        PolyCurve c;
        c.vertices = std::move(lift);
        out.components.push_back(std::move(c));
    } else {
        PolyCurve c;
        c.vertices = lift;
        PolyCurve twin;
        twin.vertices.reserve(n);
        for (const auto& p : lift) twin.vertices.push_back({-p.x, -p.y});
        out.components.push_back(std::move(c));
        out.components.push_back(std::move(twin));
    }
    return out;
}

inline int winding_around_origin(const PolyCurve& curve, const CurveTolerances& tol = {}) {
    return winding_number(curve, {0.0, 0.0}, tol);
}

// J1 = J+ + w0^2 / 2, stored doubled.
inline long two_j1_of(long j_plus, int w0) {
    return 2 * j_plus + static_cast<long>(w0) * w0;
}

// J2 = J+ of the (selected component of the) Levi-Civita preimage.
inline long j2_geometric(const PolyCurve& curve, const CurveTolerances& tol = {}) {
    const auto lift = levi_civita_lift_curve(curve, tol);
    return j_plus_geometric(lift.components.front(), tol);
}

// Full invariant set along the geometric route.
inline InvariantSet invariants_geometric(const PolyCurve& curve,
                                         const CurveTolerances& tol = {}) {
    InvariantSet s;
    s.method = InvariantSet::Method::Geometric;
    s.j_plus = j_plus_geometric(curve, tol);
    s.w0 = winding_around_origin(curve, tol);
    s.two_j1 = two_j1_of(s.j_plus, s.w0);
    s.j2 = j2_geometric(curve, tol);
    s.odd_parity = (s.w0 % 2) != 0;
    return s;
}

// ---------------------------------------------------------------------------
// Event-tracked invariants along a family

struct EventRecord {
    enum class Kind { I0, IInf, IIPlus, III, DirectTangency };
    Kind kind = Kind::III;
    double param_before = 0.0;
    double param_after = 0.0;
    int delta_n = 0;
    int delta_w0 = 0;
    int delta_rotation = 0;
};

// Per-member invariants from the event update rules.  `events[i]` lists the
// events between member i and member i+1.  Direct tangencies are not
// Stark-Zeeman events; they change J+ by +-2 (sign of the double-point count
// change) and are reported by the caller as violations.
inline std::vector<InvariantSet> j_plus_tracked(
    const std::vector<PolyCurve>& family, const InvariantSet& initial,
    const std::vector<std::vector<EventRecord>>& events,
    const CurveTolerances& tol = {}) {
    if (family.empty()) return {};
    if (events.size() + 1 != family.size())
        throw PreconditionError("j_plus_tracked: need one event list per member gap");

    std::vector<InvariantSet> out;
    out.reserve(family.size());
    InvariantSet cur = initial;
    cur.method = InvariantSet::Method::Tracked;
    out.push_back(cur);
    for (std::size_t i = 1; i < family.size(); ++i) {
        const int w_prev = cur.w0;
        const int w_now = winding_around_origin(family[i], tol);
        for (const auto& ev : events[i - 1]) {
            switch (ev.kind) {
                case EventRecord::Kind::I0:
                    // collision loop: J+ changes so that J1 stays constant
                    cur.j_plus += (static_cast<long>(w_prev) * w_prev -
                                   static_cast<long>(w_prev + ev.delta_w0) *
                                       (w_prev + ev.delta_w0)) / 2;
                    break;
                case EventRecord::Kind::IInf:
                case EventRecord::Kind::IIPlus:
                case EventRecord::Kind::III:
                    break;   // J+ unchanged
                case EventRecord::Kind::DirectTangency:
                    cur.j_plus += 2 * (ev.delta_n > 0 ? 1 : -1);
                    break;
            }
        }
        cur.w0 = w_now;
        cur.two_j1 = two_j1_of(cur.j_plus, cur.w0);
        cur.odd_parity = (cur.w0 % 2) != 0;
        out.push_back(cur);
    }
    return out;
}

} // namespace szplus
