#pragma once

// Constructive curve synthesis: standard curves, loop additions, tangency
// passages, triple-point slides, satellites and connected sums, each realized
// as an explicit polyline edit with the induced J+ change tracked
// symbolically.  Results double as the ground-truth oracle for the geometric
// J+ computation.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "szplus/arrangement.hpp"
#include "szplus/curve.hpp"
#include "szplus/invariants.hpp"

namespace szplus {

struct SeedPlacement {
    Point2 center{0.0, 0.0};
    double radius = 1.0;
    bool around_origin = true;
};

// What the construction knows the curve to be, used to seed J+ through
// satellite steps where a direct update rule is not available.
struct CurveTag {
    enum class Kind { None, StandardJ, Spiral, DoubleStandard };
    Kind kind = Kind::None;
    int param = 0;
};

struct StepLog {
    std::string op;
    long delta_j = 0;
};

struct OracleResult {
    PolyCurve curve;
    long j_plus = 0;
    int w0 = 0;
    int rotation = 0;
    std::size_t n_double = 0;
    CurveTag tag;
    std::vector<StepLog> log;
};

struct FaceSelector {
    int winding = 1;
    int area_rank = 0;   // among faces of that winding, by descending area
};

namespace detail {

inline double wrap_param(double s, double L) {
    s = std::fmod(s, L);
    return s < 0.0 ? s + L : s;
}

struct ArcFrame {
    std::vector<double> cum;
    double L = 0.0;
};

inline ArcFrame arc_frame(const std::vector<Point2>& v) {
    ArcFrame f;
    f.cum = cumulative_arclength(v);
    f.L = f.cum.back();
    return f;
}

inline Point2 point_on(const std::vector<Point2>& v, const ArcFrame& f, double s) {
    const std::size_t n = v.size();
    s = wrap_param(s, f.L);
    auto it = std::upper_bound(f.cum.begin(), f.cum.end(), s);
    std::size_t i = static_cast<std::size_t>(it - f.cum.begin());
    i = i == 0 ? 0 : i - 1;
    if (i >= n) i = n - 1;
    const double ds = f.cum[i + 1] - f.cum[i];
    const double t = ds > 0.0 ? (s - f.cum[i]) / ds : 0.0;
    return v[i] + (v[(i + 1) % n] - v[i]) * t;
}

inline Vec2 dir_on(const std::vector<Point2>& v, const ArcFrame& f, double s) {
    const std::size_t n = v.size();
    s = wrap_param(s, f.L);
    auto it = std::upper_bound(f.cum.begin(), f.cum.end(), s);
    std::size_t i = static_cast<std::size_t>(it - f.cum.begin());
    i = i == 0 ? 0 : i - 1;
    if (i >= n) i = n - 1;
    return normalized(v[(i + 1) % n] - v[i]);
}

// Replace the arclength window (s_lo, s_hi) by `path`.  The path must start
// at point_on(s_lo) and end at point_on(s_hi); both are included here.
inline std::vector<Point2> splice_window(const std::vector<Point2>& v, double s_lo,
                                         double s_hi, const std::vector<Point2>& path) {
    const ArcFrame f = arc_frame(v);
    const std::size_t n = v.size();
    if (s_hi <= s_lo) throw PlacementError("splice_window: empty window");
    if (s_hi - s_lo >= 0.9 * f.L)
        throw PlacementError("splice_window: window covers most of the curve");
    const double lo = wrap_param(s_lo, f.L);
    const double hi = lo + (s_hi - s_lo);

    std::vector<Point2> out;
    out.push_back(point_on(v, f, lo));
    for (const auto& p : path)
        if (dist(out.back(), p) > 1e-13) out.push_back(p);
    const Point2 end = point_on(v, f, hi);
    if (dist(out.back(), end) > 1e-13) out.push_back(end);

    // surviving original vertices, in traversal order after the window
    std::vector<std::pair<double, std::size_t>> keep;
    for (std::size_t k = 0; k < n; ++k) {
        const double q = f.cum[k] < lo ? f.cum[k] + f.L : f.cum[k];   // in [lo, lo+L)
        if (q > hi && q < lo + f.L) keep.push_back({q, k});
    }
    std::sort(keep.begin(), keep.end());
    for (const auto& [q, k] : keep) {
        (void)q;
        if (dist(out.back(), v[k]) > 1e-13) out.push_back(v[k]);
    }
    if (dist(out.front(), out.back()) < 1e-13) out.pop_back();
    return out;
}

struct RayHit {
    double distance = 0.0;
    double param = 0.0;   // arclength parameter of the hit on the curve
    Vec2 tangent;
    Point2 point;
};

// First and second hits of the ray P + t*d against the curve, skipping edges
// within `excl` of any excluded arclength position.
inline std::vector<RayHit> ray_hits(const std::vector<Point2>& v, const ArcFrame& f,
                                    const Point2& P, const Vec2& d, double max_dist,
                                    const std::vector<double>& excl_params, double excl) {
    const std::size_t n = v.size();
    const Point2 tip = P + d * max_dist;
    std::vector<RayHit> hits;
    for (std::size_t i = 0; i < n; ++i) {
        const double mid = 0.5 * (f.cum[i] + f.cum[i + 1]);
        bool skip = false;
        for (double e : excl_params)
            if (cyclic_gap(mid, e, f.L) < excl) { skip = true; break; }
        if (skip) continue;
        auto h = segment_intersect(P, tip, v[i], v[(i + 1) % n]);
        if (!h) continue;
        RayHit rh;
        rh.distance = h->s * max_dist;
        rh.param = f.cum[i] + h->t * (f.cum[i + 1] - f.cum[i]);
        rh.tangent = normalized(v[(i + 1) % n] - v[i]);
        rh.point = h->point;
        hits.push_back(rh);
    }
    std::sort(hits.begin(), hits.end(),
              [](const RayHit& a, const RayHit& b) { return a.distance < b.distance; });
    return hits;
}

// Small loop polyline from A to B, dipping to the given side (+1: left of
// A->B), with one self-crossing.  Prolate-cycloid profile.
inline std::vector<Point2> cycloid_loop(const Point2& A, const Point2& B, int side,
                                        double height, std::size_t m = 48) {
    const Vec2 chord = B - A;
    const double half = 0.5 * chord.norm();
    const Vec2 T = normalized(chord);
    const Vec2 N = perp(T) * static_cast<double>(side);
    const Point2 P = (A + B) / 2.0;
    const double lam = 1.7;
    std::vector<Point2> pts;
    pts.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = -M_PI + 2.0 * M_PI * static_cast<double>(k) /
                                     static_cast<double>(m - 1);
        const double x = t - lam * std::sin(t);
        const double y = lam * (1.0 + std::cos(t));
        pts.push_back(P + T * (half * x / M_PI) + N * (height * y / (2.0 * lam)));
    }
    return pts;
}

// Total turning of the position vector about the origin along the forward
// sub-arc from s_from to s_to, in full turns (not rounded).
inline double subarc_origin_turns(const std::vector<Point2>& v, const ArcFrame& f,
                                  double s_from, double s_to) {
    const std::size_t n = v.size();
    double lo = wrap_param(s_from, f.L);
    double hi = wrap_param(s_to, f.L);
    if (hi <= lo) hi += f.L;
    double total = 0.0;
    Point2 prev = point_on(v, f, lo);
    for (std::size_t k = 0; k < n; ++k) {
        double p = f.cum[k] < lo ? f.cum[k] + f.L : f.cum[k];
        if (p <= lo || p >= hi) continue;
        const Point2 cur = v[k];
        total += turn_angle(prev, cur);
        prev = cur;
    }
    const Point2 last = point_on(v, f, hi);
    total += turn_angle(prev, last);
    return total / (2.0 * M_PI);
}

inline bool params_clear_of_crossings(const std::vector<DoublePoint>& dps, double lo,
                                      double hi, double L) {
    for (const auto& dp : dps)
        for (double p : {dp.param_a, dp.param_b}) {
            double q = p < lo ? p + L : p;
            if (q > lo && q < hi) return false;
        }
    return true;
}

// Subdivide a straight run so downstream grids and windows stay local.
inline void push_subdivided(std::vector<Point2>& out, const Point2& from,
                            const Point2& to, std::size_t pieces) {
    for (std::size_t k = 1; k <= pieces; ++k)
        out.push_back(from + (to - from) * (static_cast<double>(k) /
                                            static_cast<double>(pieces)));
}

} // namespace detail

// Re-measure the realized polyline and check it against the symbolic record.
inline void verify_oracle(OracleResult& st, const CurveTolerances& tol = {}) {
    st.curve.check_well_formed();
    const auto dps = double_points(st.curve, tol);
    if (dps.size() != st.n_double)
        throw PlacementError("oracle verify: double-point count " +
                             std::to_string(dps.size()) + " != expected " +
                             std::to_string(st.n_double));
    const int rot = rotation_number(st.curve);
    if (rot != st.rotation)
        throw PlacementError("oracle verify: rotation mismatch");
    const int w0 = winding_number(st.curve, {0.0, 0.0}, tol);
    if (w0 != st.w0) throw PlacementError("oracle verify: origin winding mismatch");
    if (st.j_plus % 2 != 0) throw PlacementError("oracle verify: J+ must be even");
}

// ---------------------------------------------------------------------------
// Loop addition (the basic birth-of-a-loop move)

// Insert a small loop at arclength position s0, on the given side of travel
// (+1 left).  delta J+ = -2 * side * w(face on that side); one new crossing.
inline void insert_loop_at(OracleResult& st, double s0, int side, double scale_hint,
                           const CurveTolerances& tol = {}) {
    const auto& v = st.curve.vertices;
    const auto f = detail::arc_frame(v);
    const double diam = curve_diameter(v);
    const auto dps = double_points_raw(st.curve);

    double a = scale_hint;
    std::string last_err = "no attempt";
    for (int attempt = 0; attempt < 8; ++attempt, a *= 0.5) {
        const double lo = s0 - a, hi = s0 + a;
        if (!detail::params_clear_of_crossings(dps, detail::wrap_param(lo, f.L),
                                               detail::wrap_param(lo, f.L) + 2.0 * a, f.L)) {
            last_err = "window contains a crossing";
            continue;
        }
        const Point2 P = detail::point_on(v, f, s0);
        const Vec2 T = detail::dir_on(v, f, s0);
        const Vec2 N = perp(T) * static_cast<double>(side);
        // clearance into the face
        auto hits = detail::ray_hits(v, f, P + N * (1e-9 * diam), N, 4.0 * diam,
                                     {s0}, 3.0 * a);
        const double df = hits.empty() ? 2.0 * diam : hits.front().distance;
        const double h = std::min(0.55 * df, 1.2 * a);
        if (h < 1e-7 * diam) { last_err = "no room for loop"; continue; }

        const Point2 A = detail::point_on(v, f, lo);
        const Point2 B = detail::point_on(v, f, hi);
        const int w_face = winding_number(st.curve, P + N * (0.6 * h), tol);

        OracleResult trial = st;
        trial.curve.vertices =
            detail::splice_window(v, lo, hi, detail::cycloid_loop(A, B, side, h));
        trial.n_double = st.n_double + 1;
        trial.rotation = st.rotation + side;
        const long dj = -2L * side * w_face;
        trial.j_plus = st.j_plus + dj;
        trial.tag = {CurveTag::Kind::None, 0};
        try {
            verify_oracle(trial, tol);
        } catch (const std::runtime_error& e) {
            last_err = e.what();
            continue;
        }
        trial.log.push_back({"add_loop(w=" + std::to_string(w_face) + ")", dj});
        st = std::move(trial);
        return;
    }
    throw PlacementError(std::string("insert_loop_at: ") + last_err);
}

// Resolve a face by (winding, area rank); returns its index in the arrangement.
inline std::size_t resolve_face(const CurveArrangement& arr, const FaceSelector& sel) {
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < arr.faces.size(); ++i)
        if (arr.faces[i].winding == sel.winding) cand.push_back(i);
    if (cand.empty()) throw PlacementError("resolve_face: no face with that winding");
    std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
        return arr.faces[a].area > arr.faces[b].area;
    });
    return cand[static_cast<std::size_t>(sel.area_rank) % cand.size()];
}

// Add a loop inside the selected face, attached to the selected boundary arc.
// Returns the face winding used (for property tests of the loop lemma).
inline int add_loop(OracleResult& st, const FaceSelector& sel, int arc_rank,
                    const CurveTolerances& tol = {}) {
    const auto arr = build_arrangement(st.curve, tol);
    const std::size_t fi = resolve_face(arr, sel);
    const auto& face = arr.faces[fi];

    if (arr.vertices.empty()) {
        // embedded curve: arcs are the whole curve; attach anywhere
        const auto f = detail::arc_frame(st.curve.vertices);
        const double s0 = f.L * 0.25 * (1.0 + static_cast<double>(arc_rank % 3));
        const Vec2 T = detail::dir_on(st.curve.vertices, f, s0);
        const Point2 P = detail::point_on(st.curve.vertices, f, s0);
        // which side is the chosen face on?
        int side = 1;
        const double probe = 1e-3 * curve_diameter(st.curve.vertices);
        try {
            if (winding_number(st.curve, P + perp(T) * probe, tol) != face.winding)
                side = -1;
        } catch (const ProximityError&) {
            side = -1;
        }
        insert_loop_at(st, s0, side, 0.08 * f.L, tol);
        return face.winding;
    }

    std::vector<std::size_t> arcs = face.boundary_arcs;
    std::sort(arcs.begin(), arcs.end(), [&](std::size_t a, std::size_t b) {
        return arr.arcs[a].length > arr.arcs[b].length;
    });
    std::string last_err = "no boundary arc usable";
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& arc = arr.arcs[arcs[(static_cast<std::size_t>(arc_rank) + k) % arcs.size()]];
        const int side = arc.left_face == static_cast<int>(fi) ? 1 : -1;
        double span = arc.to_param - arc.from_param;
        const auto f = detail::arc_frame(st.curve.vertices);
        if (span <= 0.0) span += f.L;
        const double s0 = detail::wrap_param(arc.from_param + 0.5 * span, f.L);
        try {
            insert_loop_at(st, s0, side, std::min(0.25 * span, 0.05 * f.L), tol);
            return face.winding;
        } catch (const PlacementError& e) {
            last_err = e.what();
        }
    }
    throw PlacementError(std::string("add_loop: ") + last_err);
}

inline void add_exterior_loop(OracleResult& st, const CurveTolerances& tol = {}) {
    add_loop(st, FaceSelector{0, 0}, 0, tol);
}

// ---------------------------------------------------------------------------
// Self-tangency passages (II moves)

enum class Tangency { Direct, Inverse };

// Push a finger from position s1 across the first strand met on the given
// side; creates 2 crossings.  Direct passages change J+ by +2, inverse by 0.
// Returns the number of origin turns of the sub-arc between the two strands
// (odd count means the crossings connect different square-root branches).
inline int finger_push_at(OracleResult& st, double s1, int side, Tangency want,
                          const CurveTolerances& tol = {}) {
    const auto& v = st.curve.vertices;
    const auto f = detail::arc_frame(v);
    const double diam = curve_diameter(v);
    const auto dps = double_points_raw(st.curve);

    const Point2 P = detail::point_on(v, f, s1);
    const Vec2 T = detail::dir_on(v, f, s1);
    const Vec2 N = perp(T) * static_cast<double>(side);

    const double excl = std::max(0.02 * f.L, 6.0 * f.L / static_cast<double>(v.size()));
    auto hits = detail::ray_hits(v, f, P + N * (1e-9 * diam), N, 4.0 * diam, {s1}, excl);
    if (hits.empty()) throw PlacementError("finger_push_at: no strand on this side");
    const auto& hit = hits.front();
    const double d = hit.distance;
    const double headroom = hits.size() > 1 ? hits[1].distance - d : d;
    if (headroom < 0.25 * d) throw PlacementError("finger_push_at: no headroom past strand");

    const double align = dot(T, hit.tangent);
    const Tangency got = align > 0.0 ? Tangency::Direct : Tangency::Inverse;
    if (std::abs(align) < 0.3) throw PlacementError("finger_push_at: oblique strand");
    if (got != want) throw PlacementError("finger_push_at: wrong tangency type here");

    const int branch_turns = static_cast<int>(
        std::lround(detail::subarc_origin_turns(v, f, hit.param, s1)));

    double a = std::min(0.35 * d, 0.03 * f.L);
    std::string last_err = "no attempt";
    for (int attempt = 0; attempt < 8; ++attempt, a *= 0.6) {
        const double lo = s1 - a, hi = s1 + a;
        if (!detail::params_clear_of_crossings(dps, detail::wrap_param(lo, f.L),
                                               detail::wrap_param(lo, f.L) + 2.0 * a, f.L)) {
            last_err = "window contains a crossing";
            continue;
        }
        const double h = d + std::min(0.4 * headroom, 1.5 * d);
        const Point2 A = detail::point_on(v, f, lo);
        const Point2 B = detail::point_on(v, f, hi);
        const Vec2 Tc = normalized(B - A);
        const Vec2 Nc = perp(Tc) * static_cast<double>(side);
        std::vector<Point2> path;
        path.push_back(A);
        detail::push_subdivided(path, A, A + Nc * h, 6);
        detail::push_subdivided(path, A + Nc * h, B + Nc * h, 4);
        detail::push_subdivided(path, B + Nc * h, B, 6);

        OracleResult trial = st;
        trial.curve.vertices = detail::splice_window(v, lo, hi, path);
        trial.n_double = st.n_double + 2;
        const long dj = want == Tangency::Direct ? 2 : 0;
        trial.j_plus = st.j_plus + dj;
        trial.tag = {CurveTag::Kind::None, 0};
        try {
            verify_oracle(trial, tol);
        } catch (const std::runtime_error& e) {
            last_err = e.what();
            continue;
        }
        trial.log.push_back({want == Tangency::Direct ? "ii_direct" : "ii_inverse", dj});
        st = std::move(trial);
        return branch_turns;
    }
    throw PlacementError(std::string("finger_push_at: ") + last_err);
}

// Forward II move at a randomly searched placement of the requested type.
inline void ii_move_forward(OracleResult& st, Tangency want, std::mt19937& rng,
                            const CurveTolerances& tol = {}) {
    const auto f = detail::arc_frame(st.curve.vertices);
    std::uniform_real_distribution<double> uni(0.0, f.L);
    std::uniform_int_distribution<int> coin(0, 1);
    std::string last_err = "no placement found";
    for (int attempt = 0; attempt < 120; ++attempt) {
        try {
            finger_push_at(st, uni(rng), coin(rng) ? 1 : -1, want, tol);
            return;
        } catch (const PlacementError& e) {
            last_err = e.what();
        }
    }
    throw PlacementError(std::string("ii_move_forward: ") + last_err);
}

// Backward II move: collapse an empty bigon face (two arcs, two corners).
inline void ii_move_backward(OracleResult& st, const CurveTolerances& tol = {}) {
    const auto arr = build_arrangement(st.curve, tol);
    const auto f = detail::arc_frame(st.curve.vertices);
    std::string last_err = "no bigon face";
    for (std::size_t fi = 0; fi < arr.faces.size(); ++fi) {
        const auto& face = arr.faces[fi];
        if (!face.bounded) continue;
        std::vector<std::size_t> arcs = face.boundary_arcs;
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        if (arcs.size() != 2 || face.boundary_arcs.size() != 2) continue;
        const auto& e1 = arr.arcs[arcs[0]];
        const auto& e2 = arr.arcs[arcs[1]];
        if (e1.from_vertex == e1.to_vertex || e2.from_vertex == e2.to_vertex) continue;
        const bool parallel =
            e1.from_vertex == e2.from_vertex && e1.to_vertex == e2.to_vertex;
        const bool antiparallel =
            e1.from_vertex == e2.to_vertex && e1.to_vertex == e2.from_vertex;
        if (!parallel && !antiparallel) continue;

        // move the shorter arc to the far side of the longer one
        const auto& keep = e1.length >= e2.length ? e1 : e2;
        const auto& move = e1.length >= e2.length ? e2 : e1;
        double span = move.to_param - move.from_param;
        if (span <= 0.0) span += f.L;
        double delta = std::min(0.3 * std::min(e1.length, e2.length), 0.05 * f.L);
        double eta = 0.5 * delta;
        for (int attempt = 0; attempt < 6; ++attempt, delta *= 0.6, eta *= 0.6) {
            std::vector<Point2> path;
            const double lo = move.from_param - delta;
            const double hi = move.from_param + span + delta;
            path.push_back(detail::point_on(st.curve.vertices, f, lo));
            std::vector<Point2> off;
            for (std::size_t i = 0; i < keep.points.size(); ++i) {
                Vec2 t;
                if (i + 1 < keep.points.size())
                    t = normalized(keep.points[i + 1] - keep.points[i]);
                else
                    t = normalized(keep.points[i] - keep.points[i - 1]);
                Vec2 away = keep.left_face == static_cast<int>(fi) ? perp(t) * -1.0 : perp(t);
                off.push_back(keep.points[i] + away * eta);
            }
            if (antiparallel) std::reverse(off.begin(), off.end());
            for (const auto& p : off) path.push_back(p);
            path.push_back(detail::point_on(st.curve.vertices, f, hi));

            OracleResult trial = st;
            trial.curve.vertices = detail::splice_window(st.curve.vertices, lo, hi, path);
            trial.n_double = st.n_double - 2;
            const long dj = parallel ? -2 : 0;
            trial.j_plus = st.j_plus + dj;
            trial.tag = {CurveTag::Kind::None, 0};
            try {
                verify_oracle(trial, tol);
            } catch (const std::runtime_error& e) {
                last_err = e.what();
                continue;
            }
            trial.log.push_back({parallel ? "ii_direct_backward" : "ii_inverse_backward", dj});
            st = std::move(trial);
            return;
        }
    }
    throw PlacementError(std::string("ii_move_backward: ") + last_err);
}

// ---------------------------------------------------------------------------
// Triple-point slide (III move): push one side of a triangular face across
// the opposite corner.  J+ unchanged, crossing count unchanged.
inline void iii_move(OracleResult& st, int which = 0, const CurveTolerances& tol = {}) {
    const auto arr = build_arrangement(st.curve, tol);
    const auto f = detail::arc_frame(st.curve.vertices);
    std::string last_err = "no triangular face";
    int seen = 0;
    for (std::size_t fi = 0; fi < arr.faces.size(); ++fi) {
        const auto& face = arr.faces[fi];
        if (!face.bounded || face.boundary_arcs.size() != 3) continue;
        std::vector<std::size_t> arcs = face.boundary_arcs;
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        if (arcs.size() != 3) continue;
        if (seen++ < which % 4) continue;

        for (std::size_t pick = 0; pick < 3; ++pick) {
            const auto& e = arr.arcs[arcs[pick]];
            // corner opposite to e
            std::size_t vopp = SIZE_MAX;
            for (std::size_t other : arcs) {
                if (other == arcs[pick]) continue;
                for (std::size_t cand : {arr.arcs[other].from_vertex, arr.arcs[other].to_vertex})
                    if (cand != e.from_vertex && cand != e.to_vertex) vopp = cand;
            }
            if (vopp == SIZE_MAX) continue;
            const Point2 V = arr.vertices[vopp].position;

            double span = e.to_param - e.from_param;
            if (span <= 0.0) span += f.L;
            double delta = std::min(0.25 * e.length, 0.05 * f.L);
            for (int attempt = 0; attempt < 6; ++attempt, delta *= 0.6) {
                const double lo = e.from_param - delta;
                const double hi = e.from_param + span + delta;
                const Point2 A = detail::point_on(st.curve.vertices, f, lo);
                const Point2 B = detail::point_on(st.curve.vertices, f, hi);
                const Vec2 Tc = normalized(B - A);
                // push past the opposite corner, away from the chord
                const Point2 foot = A + Tc * dot(V - A, Tc);
                Vec2 d = V - foot;
                const double dn = d.norm();
                if (dn < 1e-12) break;
                d = d / dn;
                const double eta = 0.35 * delta;
                const Point2 M = V + d * eta;
                std::vector<Point2> path;
                path.push_back(A);
                detail::push_subdivided(path, A, M - Tc * eta, 6);
                detail::push_subdivided(path, M - Tc * eta, M + Tc * eta, 2);
                detail::push_subdivided(path, M + Tc * eta, B, 6);

                OracleResult trial = st;
                trial.curve.vertices = detail::splice_window(st.curve.vertices, lo, hi, path);
                trial.n_double = st.n_double;
                trial.j_plus = st.j_plus;
                trial.tag = {CurveTag::Kind::None, 0};
                try {
                    verify_oracle(trial, tol);
                } catch (const std::runtime_error& ex) {
                    last_err = ex.what();
                    continue;
                }
                trial.log.push_back({"iii_move", 0});
                st = std::move(trial);
                return;
            }
        }
    }
    throw PlacementError(std::string("iii_move: ") + last_err);
}

// ---------------------------------------------------------------------------
// Standard curves

inline OracleResult standard_curve(int j, const SeedPlacement& pl = {},
                                   const CurveTolerances& tol = {}) {
    if (pl.radius <= 0.0) throw PlacementError("standard_curve: degenerate placement");
    OracleResult st;
    const std::size_t m = 192;
    if (j == 0) {
        // figure eight; crossing kept off the sampling grid
        std::vector<Point2> v;
        v.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double t = 2.0 * M_PI * (static_cast<double>(i) + 0.37) /
                             static_cast<double>(m);
            v.push_back({pl.center.x + 0.6 * pl.radius * std::sin(2.0 * t),
                         pl.center.y + pl.radius * std::sin(t)});
        }
        st.curve.vertices = std::move(v);
        if (pl.around_origin) {
            // shift so the origin lands inside the positively wound lobe
            const Point2 probe{pl.center.x, pl.center.y + 0.6 * pl.radius};
            const int w = winding_number(st.curve, probe, tol);
            const Point2 target = w > 0
                                      ? probe
                                      : Point2{pl.center.x, pl.center.y - 0.6 * pl.radius};
            for (auto& p : st.curve.vertices) p -= target;
        }
        st.j_plus = 0;
        st.rotation = 0;
        st.n_double = 1;
        st.w0 = pl.around_origin ? 1 : winding_number(st.curve, {0, 0}, tol);
        st.tag = {CurveTag::Kind::StandardJ, 0};
        st.log.push_back({"standard_curve(0)", 0});
        verify_oracle(st, tol);
        return st;
    }

    const int aj = std::abs(j);
    std::vector<Point2> v;
    v.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m);
        v.push_back({pl.center.x + pl.radius * std::cos(t),
                     pl.center.y + pl.radius * std::sin(t)});
    }
    st.curve.vertices = std::move(v);
    st.j_plus = 0;
    st.rotation = 1;
    st.n_double = 0;
    st.w0 = winding_number(st.curve, {0, 0}, tol);
    st.log.push_back({"standard_curve(circle)", 0});
    verify_oracle(st, tol);

    // Anchor each insertion site on the original circle: inserted loops
    // stretch the arclength parametrization, so fixed parameters computed up
    // front would drift into earlier loops for large |j|.
    for (int k = 0; k < aj - 1; ++k) {
        const double th = 2.0 * M_PI * (static_cast<double>(k) + 0.5) /
                          static_cast<double>(aj - 1);
        const Point2 anchor{pl.center.x + pl.radius * std::cos(th),
                            pl.center.y + pl.radius * std::sin(th)};
        const auto f = detail::arc_frame(st.curve.vertices);
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < st.curve.vertices.size(); ++i) {
            const double d = dist(st.curve.vertices[i], anchor);
            if (d < bd) { bd = d; best = i; }
        }
        insert_loop_at(st, f.cum[best], /*side=*/1, 0.12 * pl.radius, tol);
    }
    if (st.j_plus != 2 - 2L * aj)
        throw PlacementError("standard_curve: loop insertions took an unexpected face");

    if (j < 0) {
        for (auto& p : st.curve.vertices) p.y = -p.y;
        st.rotation = -st.rotation;
        st.w0 = -st.w0;
        verify_oracle(st, tol);
    }
    st.tag = {CurveTag::Kind::StandardJ, j};
    st.log.push_back({"standard_curve(" + std::to_string(j) + ")", 0});
    return st;
}

// ---------------------------------------------------------------------------
// Satellites: n parallel copies spiraling along the curve, closed by a short
// jump across the strands (n-1 extra crossings).

inline OracleResult satellite(const OracleResult& base, int n,
                              const CurveTolerances& tol = {}) {
    if (n < 1) throw PreconditionError("satellite: n must be >= 1");
    if (n == 1) return base;

    long j_new = 0;
    CurveTag tag{CurveTag::Kind::None, 0};
    if (base.n_double == 0) {
        j_new = -static_cast<long>(n) * (n - 1);   // spiral along an embedded circle
        tag = {CurveTag::Kind::Spiral, n * (base.rotation >= 0 ? 1 : -1)};
    } else if (base.tag.kind == CurveTag::Kind::StandardJ && n == 2) {
        const int j = std::abs(base.tag.param);
        j_new = -2 - 8L * (j - 1);
        tag = {CurveTag::Kind::DoubleStandard, base.tag.param};
    } else {
        throw PreconditionError("satellite: J+ not determined for this base/n");
    }

    const double diam = curve_diameter(base.curve.vertices);
    double eps = 0.02 * diam / static_cast<double>(n);
    std::string last_err = "no attempt";
    for (int attempt = 0; attempt < 8; ++attempt, eps *= 0.5) {
        const std::size_t m = std::max<std::size_t>(base.curve.size(), 256);
        const auto g = resample_closed(base.curve.vertices, m);
        std::vector<Point2> v;
        v.reserve(m * static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < m; ++i) {
                const Point2& prev = g[(i + m - 1) % m];
                const Point2& next = g[(i + 1) % m];
                const Vec2 N = normalized(perp(next - prev));
                const double off =
                    eps * (static_cast<double>(k) +
                           (static_cast<double>(i) + 0.5) / static_cast<double>(m));
                v.push_back(g[i] + N * off);
            }
        }
        OracleResult st;
        st.curve.vertices = std::move(v);
        st.j_plus = j_new;
        st.w0 = n * base.w0;
        st.rotation = n * base.rotation;
        st.n_double = static_cast<std::size_t>(n) * n * base.n_double +
                      static_cast<std::size_t>(n - 1);
        st.tag = tag;
        st.log = base.log;
        st.log.push_back({"satellite(" + std::to_string(n) + ")", 0});
        try {
            verify_oracle(st, tol);
        } catch (const std::runtime_error& e) {
            last_err = e.what();
            continue;
        }
        return st;
    }
    throw PlacementError(std::string("satellite: ") + last_err);
}

// ---------------------------------------------------------------------------
// Connected sum: splice `b` into `a` through a short band across a clear
// corridor.  J+ and origin winding are additive; no new crossings.

struct SumPlacement {
    bool auto_place = true;   // place b beyond a's bounding box to the right
    Point2 translate{0.0, 0.0};
    double scale = 1.0;
    std::size_t junction_offset = 0;   // skip the closest junction candidates
};

inline OracleResult connected_sum(const OracleResult& a, const OracleResult& b,
                                  const SumPlacement& pl = {},
                                  const CurveTolerances& tol = {}) {
    // place a copy of b
    std::vector<Point2> bv = b.curve.vertices;
    if (pl.scale != 1.0)
        for (auto& p : bv) p = p * pl.scale;
    Point2 shift = pl.translate;
    if (pl.auto_place) {
        double axmax = -1e300, bxmin = 1e300;
        double aymid = 0.0, bymid = 0.0;
        for (const auto& p : a.curve.vertices) { axmax = std::max(axmax, p.x); aymid += p.y; }
        for (const auto& p : bv) { bxmin = std::min(bxmin, p.x); bymid += p.y; }
        aymid /= static_cast<double>(a.curve.size());
        bymid /= static_cast<double>(bv.size());
        const double gap = 0.25 * (curve_diameter(a.curve.vertices) + curve_diameter(bv));
        shift = {axmax - bxmin + gap, aymid - bymid};
    }
    for (auto& p : bv) p += shift;

    PolyCurve placed_b;
    placed_b.vertices = bv;
    const int w0b = winding_number(placed_b, {0, 0}, tol);

    const auto& av = a.curve.vertices;
    const auto fa = detail::arc_frame(av);
    const auto fb = detail::arc_frame(bv);
    const std::size_t na = av.size(), nb = bv.size();

    // candidate junction pairs: close, clear corridor, antiparallel strands
    const std::size_t stride_a = std::max<std::size_t>(1, na / 96);
    const std::size_t stride_b = std::max<std::size_t>(1, nb / 96);
    struct Cand { std::size_t ia, ib; double d; };
    std::vector<Cand> cands;
    for (std::size_t ia = 0; ia < na; ia += stride_a)
        for (std::size_t ib = 0; ib < nb; ib += stride_b) {
            const Vec2 Ta = normalized(av[(ia + 1) % na] - av[ia]);
            const Vec2 Tb = normalized(bv[(ib + 1) % nb] - bv[ib]);
            if (dot(Ta, Tb) > -0.3) continue;
            cands.push_back({ia, ib, dist(av[ia], bv[ib])});
        }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& x, const Cand& y) { return x.d < y.d; });

    std::string last_err = "no junction candidates";
    for (std::size_t ci = pl.junction_offset;
         ci < cands.size() && ci < 48 + pl.junction_offset; ++ci) {
        const auto& c = cands[ci];
        const Point2 pa = av[c.ia], pb = bv[c.ib];
        // corridor clearance (excluding strands near the junction points)
        bool clear = true;
        for (std::size_t i = 0; i < na && clear; ++i) {
            const std::size_t gap = std::min(i > c.ia ? i - c.ia : c.ia - i,
                                             na - (i > c.ia ? i - c.ia : c.ia - i));
            if (gap <= 3) continue;
            if (segment_intersect(pa, pb, av[i], av[(i + 1) % na])) clear = false;
        }
        for (std::size_t i = 0; i < nb && clear; ++i) {
            const std::size_t gap = std::min(i > c.ib ? i - c.ib : c.ib - i,
                                             nb - (i > c.ib ? i - c.ib : c.ib - i));
            if (gap <= 3) continue;
            if (segment_intersect(pa, pb, bv[i], bv[(i + 1) % nb])) clear = false;
        }
        if (!clear) { last_err = "corridor blocked"; continue; }

        const double sa = fa.cum[c.ia];
        const double sb = fb.cum[c.ib];
        double da = std::min(0.25 * c.d + 0.02 * fa.L, 0.06 * fa.L);
        double db = std::min(0.25 * c.d + 0.02 * fb.L, 0.06 * fb.L);
        for (int attempt = 0; attempt < 5; ++attempt, da *= 0.6, db *= 0.6) {
            // a without its window, bridge, b without its window, bridge back
            std::vector<Point2> out;
            const double lo_a = sa + da;            // traversal starts after the window
            const Point2 Astart = detail::point_on(av, fa, sa + da);
            const Point2 Aend = detail::point_on(av, fa, sa - da);
            const Point2 Bstart = detail::point_on(bv, fb, sb + db);
            const Point2 Bend = detail::point_on(bv, fb, sb - db);
            auto append_outside = [&out](const std::vector<Point2>& verts,
                                         const detail::ArcFrame& fr, double from,
                                         double to) {
                std::vector<std::pair<double, std::size_t>> keep;
                for (std::size_t k = 0; k < verts.size(); ++k) {
                    const double q = fr.cum[k] <= from ? fr.cum[k] + fr.L : fr.cum[k];
                    if (q > from && q < to) keep.push_back({q, k});
                }
                std::sort(keep.begin(), keep.end());
                for (const auto& [q, k] : keep) {
                    (void)q;
                    if (dist(out.back(), verts[k]) > 1e-13) out.push_back(verts[k]);
                }
            };
            out.push_back(Astart);
            append_outside(av, fa, lo_a, sa - da + fa.L);
            if (dist(out.back(), Aend) > 1e-13) out.push_back(Aend);
            detail::push_subdivided(out, Aend, Bstart, 4);
            append_outside(bv, fb, sb + db, sb - db + fb.L);
            if (dist(out.back(), Bend) > 1e-13) out.push_back(Bend);
            detail::push_subdivided(out, Bend, Astart, 4);
            if (dist(out.front(), out.back()) < 1e-13) out.pop_back();

            OracleResult st;
            st.curve.vertices = std::move(out);
            st.j_plus = a.j_plus + b.j_plus;
            st.w0 = a.w0 + w0b;
            st.n_double = a.n_double + b.n_double;
            st.rotation = 0;   // set from measurement below
            st.tag = {CurveTag::Kind::None, 0};
            st.log = a.log;
            st.log.push_back({"connected_sum", b.j_plus});
            try {
                st.curve.check_well_formed();
                st.rotation = rotation_number(st.curve);
                verify_oracle(st, tol);
            } catch (const std::runtime_error& e) {
                last_err = e.what();
                continue;
            }
            return st;
        }
    }
    throw PlacementError(std::string("connected_sum: ") + last_err);
}

// ---------------------------------------------------------------------------
// Spiral curves of winding w around the origin: w-satellite of a circle
// enclosing the origin.  J+ = -w(w-1).
inline OracleResult k_superscript(int w, const CurveTolerances& tol = {}) {
    if (w < 1) throw PreconditionError("k_superscript: w must be >= 1");
    SeedPlacement pl;
    pl.center = {0.05, 0.02};   // keep the origin off any symmetry axis
    pl.radius = 1.0;
    pl.around_origin = true;
    OracleResult circle = standard_curve(1, pl, tol);
    OracleResult st = satellite(circle, w, tol);
    st.tag = {CurveTag::Kind::Spiral, w};
    if (st.j_plus != -static_cast<long>(w) * (w - 1))
        throw PlacementError("k_superscript: unexpected J+ bookkeeping");
    return st;
}

// ---------------------------------------------------------------------------
// Even-parity family: double standard curve, k strand pulls across the
// neighboring lap (odd origin turns between the crossings), plus a summand
// with J+ = 2*l attached away from the origin.

// Pull a strand of a doubled curve across its neighbor lap `count` times;
// each pull is a direct passage (+2).  `turn_parity` constrains the number of
// origin turns of the sub-arc between the two new crossings: 1 requires odd
// (the pull joins opposite square-root branches and stays invisible in the
// lift), 0 requires even (the pull appears once per lift component, so each
// pull shifts the component J+ by +2).
inline void lap_pulls(OracleResult& st, int count, int turn_parity,
                      std::mt19937& rng, const CurveTolerances& tol = {}) {
    for (int done = 0; done < count;) {
        const auto f = detail::arc_frame(st.curve.vertices);
        std::uniform_real_distribution<double> uni(0.0, f.L);
        std::uniform_int_distribution<int> coin(0, 1);
        std::string last_err = "no pull site";
        bool ok = false;
        for (int attempt = 0; attempt < 400 && !ok; ++attempt) {
            const double s1 = uni(rng);
            const int side = coin(rng) ? 1 : -1;
            OracleResult backup = st;
            try {
                const int turns = finger_push_at(st, s1, side, Tangency::Direct, tol);
                if ((turns % 2 + 2) % 2 != turn_parity) {
                    st = std::move(backup);   // wrong lift behavior; reject site
                    continue;
                }
                ok = true;
            } catch (const PlacementError& e) {
                last_err = e.what();
                st = std::move(backup);
            }
        }
        if (!ok) throw PlacementError(std::string("lap_pulls: ") + last_err);
        ++done;
    }
}

// Realize the doubled standard curve with k pulls and an l-summand; the
// resulting invariant targets are J1 = -8(j-1)+2k+2l and J2 = -4(j-1)+2l.
inline OracleResult construct_even_pair(int j, int k, int l,
                                        const CurveTolerances& tol = {}) {
    if (j < 1 || k < 0) throw PreconditionError("construct_even_pair: need j>=1, k>=0");
    std::mt19937 rng(0xc0ffee ^ (static_cast<unsigned>(j) << 16) ^
                     (static_cast<unsigned>(k) << 8) ^ static_cast<unsigned>(l & 0xff));

    SeedPlacement pl;
    pl.center = {0.03, -0.04};
    pl.radius = 1.0;
    pl.around_origin = true;
    OracleResult core = satellite(standard_curve(j, pl, tol), 2, tol);
    lap_pulls(core, k, /*turn_parity=*/1, rng, tol);

    OracleResult summand;
    if (l <= 0) {
        SeedPlacement far;
        far.center = {6.0, 0.0};
        far.radius = 1.0;
        far.around_origin = false;
        summand = standard_curve(1 - l, far, tol);
    } else {
        SeedPlacement far;
        far.center = {6.0, 0.0};
        far.radius = 1.0;
        far.around_origin = false;
        summand = satellite(standard_curve(1, far, tol), 2, tol);
        lap_pulls(summand, l + 1, /*turn_parity=*/0, rng, tol);
    }
    if (summand.j_plus != 2L * l)
        throw PlacementError("construct_even_pair: summand J+ off target");

    // The invariants are additive under a clean junction; a junction whose
    // corridor degenerates in the squared-coordinate preimage can spoil that,
    // so verify the realized invariants and retry with the next junction.
    const long want_two_j1 = 2 * (-8L * (j - 1) + 2 * k + 2 * l);
    const long want_j2 = -4L * (j - 1) + 2 * l;
    std::string last_err = "no junction accepted";
    for (std::size_t off = 0; off < 8; ++off) {
        SumPlacement sp;
        sp.auto_place = true;
        sp.junction_offset = off;
        OracleResult st;
        try {
            st = connected_sum(core, summand, sp, tol);
            const auto inv = invariants_geometric(st.curve, tol);
            if (inv.two_j1 != want_two_j1 || inv.j2 != want_j2) {
                last_err = "junction spoiled the invariants";
                continue;
            }
        } catch (const std::runtime_error& e) {
            last_err = e.what();
            continue;
        }
        st.log.push_back({"construct_even_pair(" + std::to_string(j) + "," +
                              std::to_string(k) + "," + std::to_string(l) + ")",
                          0});
        return st;
    }
    throw PlacementError(std::string("construct_even_pair: ") + last_err);
}

// ---------------------------------------------------------------------------
// Randomized corpus programs (seeded, reproducible)

inline OracleResult run_random_program(unsigned seed, const CurveTolerances& tol = {}) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick_seed(0, 9);
    std::uniform_int_distribution<int> pick_j(-3, 3);
    std::uniform_int_distribution<int> pick_w(1, 5);
    std::uniform_int_distribution<int> coin(0, 1);

    OracleResult st;
    const int seed_kind = pick_seed(rng);
    if (seed_kind < 5) {
        SeedPlacement pl;
        pl.around_origin = coin(rng) == 1;
        pl.center = pl.around_origin ? Point2{0.07, -0.05} : Point2{2.6, 0.4};
        pl.radius = 1.0;
        st = standard_curve(pick_j(rng), pl, tol);
    } else if (seed_kind < 8) {
        st = k_superscript(pick_w(rng), tol);
        if (coin(rng)) {
            for (auto& p : st.curve.vertices) p.y = -p.y;
            st.rotation = -st.rotation;
            st.w0 = -st.w0;
            verify_oracle(st, tol);
        }
    } else {
        SeedPlacement pl;
        pl.center = {0.06, 0.03};
        pl.radius = 1.0;
        pl.around_origin = coin(rng) == 1;
        if (!pl.around_origin) pl.center = {2.4, -0.3};
        std::uniform_int_distribution<int> small_j(1, 3);
        st = satellite(standard_curve(small_j(rng), pl, tol), 2, tol);
    }

    std::uniform_int_distribution<int> nsteps_d(1, 5);
    const int nsteps = nsteps_d(rng);
    std::uniform_int_distribution<int> op_d(0, 99);
    for (int step = 0; step < nsteps; ++step) {
        if (st.n_double >= 18) break;
        const int op = op_d(rng);
        OracleResult backup = st;
        try {
            if (op < 35) {
                const auto arr = build_arrangement(st.curve, tol);
                std::uniform_int_distribution<int> fidx(
                    0, static_cast<int>(arr.faces.size()) - 1);
                const auto& face = arr.faces[static_cast<std::size_t>(fidx(rng))];
                add_loop(st, FaceSelector{face.winding, 0},
                         static_cast<int>(rng() % 4), tol);
            } else if (op < 50) {
                add_exterior_loop(st, tol);
            } else if (op < 65) {
                ii_move_forward(st, Tangency::Inverse, rng, tol);
            } else if (op < 80) {
                ii_move_forward(st, Tangency::Direct, rng, tol);
            } else if (op < 90) {
                iii_move(st, static_cast<int>(rng() % 3), tol);
            } else {
                SeedPlacement far;
                far.center = {0.0, 0.0};
                far.radius = 0.6;
                far.around_origin = false;
                std::uniform_int_distribution<int> small_j(-2, 2);
                OracleResult other = standard_curve(small_j(rng), far, tol);
                st = connected_sum(st, other, {}, tol);
            }
        } catch (const PlacementError&) {
            st = std::move(backup);   // crowded curve; skip this step
        } catch (const GenericityError&) {
            st = std::move(backup);
        } catch (const ProximityError&) {
            st = std::move(backup);
        }
    }
    return st;
}

} // namespace szplus
