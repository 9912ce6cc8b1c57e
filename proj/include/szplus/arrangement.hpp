#pragma once

// Planar subdivision induced by a generic closed curve: vertices are the
// double points, edges the arcs between them, faces carry winding numbers.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "szplus/curve.hpp"

namespace szplus {

struct ArrangementArc {
    // Arc of the curve from crossing pass `from_pass` to `to_pass` (indices
    // into the sorted pass list), with its polyline geometry (endpoints are
    // the crossing positions).
    std::size_t from_pass = 0;
    std::size_t to_pass = 0;
    std::size_t from_vertex = 0;   // double-point index
    std::size_t to_vertex = 0;
    double from_param = 0.0;       // arclength parameter on the curve
    double to_param = 0.0;         // may be < from_param when the arc wraps
    std::vector<Point2> points;
    double length = 0.0;
    int left_face = -1;    // face on the left of the arc direction
    int right_face = -1;
};

struct ArrangementFace {
    int winding = 0;
    bool bounded = true;
    int euler_char = 1;   // single-curve faces are open disks
    Point2 sample_point;
    double area = 0.0;    // absolute enclosed area of the traced boundary
    std::vector<std::size_t> boundary_arcs;   // arc indices (undirected)
};

struct CurveArrangement {
    std::vector<DoublePoint> vertices;
    std::vector<ArrangementArc> arcs;
    std::vector<ArrangementFace> faces;
    int unbounded_face = -1;

    // combinatorial fingerprint used for event detection along families
    std::vector<int> winding_multiset() const {
        std::vector<int> w;
        w.reserve(faces.size());
        for (const auto& f : faces) w.push_back(f.winding);
        std::sort(w.begin(), w.end());
        return w;
    }
};

namespace detail {

struct HalfEdge {
    std::size_t arc;      // undirected arc index
    bool forward;         // true: runs points.front() -> points.back()
    std::size_t head_vertex;
    Vec2 dir_out;         // direction leaving the tail
    Vec2 dir_in;          // direction arriving at the head
    int face = -1;
};

inline Point2 tail_point(const ArrangementArc& a, bool forward) {
    return forward ? a.points.front() : a.points.back();
}

} // namespace detail

// Clearance of a point to the curve, excluding edges whose midpoint is within
// `excl` of the point itself (used to offset sample points off an arc).
inline double clearance_to_curve(const Point2& p, const std::vector<Point2>& poly,
                                 double excl) {
    double best = std::numeric_limits<double>::max();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        const double d = point_segment_distance(p, a, b);
        if (d < excl) continue;
        best = std::min(best, d);
    }
    return best;
}

inline CurveArrangement build_arrangement(const PolyCurve& curve,
                                          const CurveTolerances& tol = {}) {
    CurveArrangement arr;
    arr.vertices = double_points(curve, tol);
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    const auto cum = detail::cumulative_arclength(v);

    if (arr.vertices.empty()) {
        // Embedded curve: one bounded and one unbounded face.
        ArrangementFace inside, outside;
        // interior sample: centroid fallback to offset from an edge
        Point2 c{0, 0};
        for (const auto& p : v) c += p;
        c = c / static_cast<double>(n);
        int w = 0;
        try {
            w = winding_number(curve, c, tol);
        } catch (const ProximityError&) {
            w = 0;
        }
        if (w == 0) {
            // non-convex: probe offsets from edge midpoints
            for (std::size_t i = 0; i < n && w == 0; ++i) {
                const Point2 m = (v[i] + v[(i + 1) % n]) / 2.0;
                const Vec2 nrm = normalized(perp(v[(i + 1) % n] - v[i]));
                const double h = clearance_to_curve(m, v, 1e-12) ;
                for (double sgn : {1.0, -1.0}) {
                    const Point2 s = m + nrm * (sgn * 0.4 * std::max(h, 1e-9));
                    try {
                        int ww = winding_number(curve, s, tol);
                        if (ww != 0) { w = ww; c = s; break; }
                    } catch (const ProximityError&) {}
                }
            }
        }
        inside.winding = w;
        inside.bounded = true;
        inside.sample_point = c;
        inside.area = std::abs(signed_area(v));
        outside.winding = 0;
        outside.bounded = false;
        outside.euler_char = 0;
        double diam = curve_diameter(v);
        outside.sample_point = v[0] + Point2{2.0 * diam, 2.0 * diam};
        arr.faces = {inside, outside};
        arr.unbounded_face = 1;
        return arr;
    }

    // Passes: each double point is visited twice.
    struct Pass { double param; std::size_t vertex; };
    std::vector<Pass> passes;
    for (std::size_t k = 0; k < arr.vertices.size(); ++k) {
        passes.push_back({arr.vertices[k].param_a, k});
        passes.push_back({arr.vertices[k].param_b, k});
    }
    std::sort(passes.begin(), passes.end(),
              [](const Pass& a, const Pass& b) { return a.param < b.param; });
    const std::size_t np = passes.size();

    // Arcs between consecutive passes, carrying the intermediate vertices.
    auto point_at = [&](double s) -> Point2 {
        // s in [0, L); locate edge by binary search
        auto it = std::upper_bound(cum.begin(), cum.end(), s);
        std::size_t i = static_cast<std::size_t>(it - cum.begin()) - 1;
        if (i >= n) i = n - 1;
        const double ds = cum[i + 1] - cum[i];
        const double t = ds > 0.0 ? (s - cum[i]) / ds : 0.0;
        return v[i] + (v[(i + 1) % n] - v[i]) * t;
    };
    (void)point_at;

    arr.arcs.resize(np);
    for (std::size_t k = 0; k < np; ++k) {
        const Pass& p0 = passes[k];
        const Pass& p1 = passes[(k + 1) % np];
        ArrangementArc arc;
        arc.from_pass = k;
        arc.to_pass = (k + 1) % np;
        arc.from_vertex = p0.vertex;
        arc.to_vertex = p1.vertex;
        arc.from_param = p0.param;
        arc.to_param = p1.param;
        arc.points.push_back(arr.vertices[p0.vertex].position);
        // intermediate polyline vertices strictly between the two params
        double s0 = p0.param, s1 = p1.param;
        const double L = cum[n];
        auto push_range = [&](double lo, double hi) {
            auto it = std::upper_bound(cum.begin(), cum.begin() + n, lo);
            for (; it != cum.begin() + n && *it < hi; ++it) {
                std::size_t idx = static_cast<std::size_t>(it - cum.begin());
                arc.points.push_back(v[idx % n]);
            }
        };
        if (s1 > s0) {
            push_range(s0, s1);
        } else {  // wraps around the closure point
            push_range(s0, L);
            if (std::abs(cum[0] - 0.0) < 1e-300) {}
            arc.points.push_back(v[0]);
            push_range(0.0, s1);
        }
        arc.points.push_back(arr.vertices[p1.vertex].position);
        // drop duplicate consecutive points
        std::vector<Point2> cleaned;
        for (const auto& p : arc.points)
            if (cleaned.empty() || dist(cleaned.back(), p) > 1e-14)
                cleaned.push_back(p);
        if (cleaned.size() < 2) cleaned.push_back(arc.points.back());
        arc.points = std::move(cleaned);
        arc.length = polyline_length(arc.points, /*closed=*/false);
        arr.arcs[k] = std::move(arc);
    }

    // Half-edges and angular order around vertices.
    std::vector<detail::HalfEdge> hes;
    hes.reserve(2 * np);
    for (std::size_t k = 0; k < np; ++k) {
        const auto& a = arr.arcs[k];
        detail::HalfEdge f, b;
        f.arc = k; f.forward = true;
        f.head_vertex = a.to_vertex;
        f.dir_out = normalized(a.points[1] - a.points[0]);
        f.dir_in = normalized(a.points[a.points.size() - 1] - a.points[a.points.size() - 2]);
        b.arc = k; b.forward = false;
        b.head_vertex = a.from_vertex;
        b.dir_out = normalized(a.points[a.points.size() - 2] - a.points[a.points.size() - 1]);
        b.dir_in = normalized(a.points[0] - a.points[1]);
        hes.push_back(f);
        hes.push_back(b);
    }
    auto tail_vertex = [&](const detail::HalfEdge& h) {
        const auto& a = arr.arcs[h.arc];
        return h.forward ? a.from_vertex : a.to_vertex;
    };

    // outgoing half-edges per vertex
    std::vector<std::vector<std::size_t>> out_at(arr.vertices.size());
    for (std::size_t h = 0; h < hes.size(); ++h)
        out_at[tail_vertex(hes[h])].push_back(h);

    // next(h): outgoing half-edge at head(h) that is the first one clockwise
    // from the reversed incoming direction (faces traced with interior on the
    // left).
    auto next_he = [&](std::size_t h) -> std::size_t {
        const auto& he = hes[h];
        const Vec2 back = he.dir_in * -1.0;
        const double ref = std::atan2(back.y, back.x);
        double best_delta = std::numeric_limits<double>::max();
        std::size_t best = SIZE_MAX;
        for (std::size_t cand : out_at[he.head_vertex]) {
            // skip the immediate u-turn onto the same arc end
            if (hes[cand].arc == he.arc && hes[cand].forward != he.forward) {
                // allowed only if no other choice; record with low priority
            }
            const Vec2 d = hes[cand].dir_out;
            double ang = ref - std::atan2(d.y, d.x);   // clockwise offset
            while (ang <= 1e-12) ang += 2.0 * M_PI;
            while (ang > 2.0 * M_PI) ang -= 2.0 * M_PI;
            if (ang < best_delta) { best_delta = ang; best = cand; }
        }
        return best;
    };

    // trace faces
    int nfaces = 0;
    for (std::size_t h0 = 0; h0 < hes.size(); ++h0) {
        if (hes[h0].face >= 0) continue;
        const int f = nfaces++;
        std::size_t h = h0;
        std::size_t guard = 0;
        do {
            hes[h].face = f;
            h = next_he(h);
            if (++guard > hes.size() + 4)
                throw GenericityError("build_arrangement: face tracing failed");
        } while (h != h0);
    }

    arr.faces.resize(static_cast<std::size_t>(nfaces));
    for (std::size_t h = 0; h < hes.size(); ++h) {
        auto& face = arr.faces[static_cast<std::size_t>(hes[h].face)];
        face.boundary_arcs.push_back(hes[h].arc);
        if (hes[h].forward)
            arr.arcs[hes[h].arc].left_face = hes[h].face;
        else
            arr.arcs[hes[h].arc].right_face = hes[h].face;
    }

    // signed area of each face from its boundary half-edges
    std::vector<double> face_area(arr.faces.size(), 0.0);
    for (std::size_t h = 0; h < hes.size(); ++h) {
        const auto& a = arr.arcs[hes[h].arc];
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < a.points.size(); ++i)
            s += cross(a.points[i], a.points[i + 1]);
        face_area[static_cast<std::size_t>(hes[h].face)] += hes[h].forward ? 0.5 * s : -0.5 * s;
    }

    // sample point per face: offset from an edge midpoint of one of its
    // boundary half-edges toward the face side, shrinking the offset until the
    // probe segment stays inside the face
    std::vector<bool> face_sampled(arr.faces.size(), false);
    auto probe_clear = [&](const Point2& m, const Point2& s,
                           const Point2& base_a, const Point2& base_b) {
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& e0 = v[i];
            const Point2& e1 = v[(i + 1) % n];
            if (dist(e0, base_a) < 1e-13 && dist(e1, base_b) < 1e-13) continue;
            if (dist(e1, base_a) < 1e-13 && dist(e0, base_b) < 1e-13) continue;
            if (segment_intersect(m, s, e0, e1)) return false;
            if (point_segment_distance(s, e0, e1) < 0.25 * dist(m, s)) return false;
        }
        return true;
    };
    for (std::size_t h = 0; h < hes.size(); ++h) {
        auto& face = arr.faces[static_cast<std::size_t>(hes[h].face)];
        if (face_sampled[static_cast<std::size_t>(hes[h].face)]) continue;
        const auto& a = arr.arcs[hes[h].arc];
        // segments of the arc, longest first
        std::vector<std::size_t> segs(a.points.size() - 1);
        for (std::size_t i = 0; i < segs.size(); ++i) segs[i] = i;
        std::sort(segs.begin(), segs.end(), [&](std::size_t x, std::size_t y) {
            return dist(a.points[x], a.points[x + 1]) > dist(a.points[y], a.points[y + 1]);
        });
        if (segs.size() > 8) segs.resize(8);
        for (std::size_t bi : segs) {
            const double blen = dist(a.points[bi], a.points[bi + 1]);
            if (blen < 1e-300) continue;
            const Point2 m = (a.points[bi] + a.points[bi + 1]) / 2.0;
            Vec2 t = normalized(a.points[bi + 1] - a.points[bi]);
            if (!hes[h].forward) t = t * -1.0;
            const Vec2 left = perp(t);
            double off = 0.45 * blen;
            bool ok = false;
            for (int iter = 0; iter < 40 && !ok; ++iter, off *= 0.5)
                ok = probe_clear(m, m + left * off, a.points[bi], a.points[bi + 1]);
            if (!ok) continue;
            face.sample_point = m + left * (2.0 * off);   // off halved past the last success
            face_sampled[static_cast<std::size_t>(hes[h].face)] = true;
            break;
        }
    }
    for (std::size_t fct = 0; fct < arr.faces.size(); ++fct)
        if (!face_sampled[fct])
            throw GenericityError("build_arrangement: could not place face sample point");

    // winding per face (and identify the unbounded face by total area sign)
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        auto& face = arr.faces[f];
        face.area = std::abs(face_area[f]);
        face.bounded = face_area[f] > 0.0;
        face.euler_char = face.bounded ? 1 : 0;
        face.winding = winding_number(curve, face.sample_point, tol);
        if (!face.bounded) arr.unbounded_face = static_cast<int>(f);
    }
    {
        int n_unb = 0;
        for (const auto& f : arr.faces)
            if (!f.bounded) ++n_unb;
        if (n_unb != 1)
            throw GenericityError("build_arrangement: expected exactly one unbounded face");
        if (arr.faces[static_cast<std::size_t>(arr.unbounded_face)].winding != 0)
            throw GenericityError("build_arrangement: unbounded face has nonzero winding");
    }

    // Euler relation on the sphere compactification: V - E + F = 2
    {
        const long V = static_cast<long>(arr.vertices.size());
        const long E = static_cast<long>(arr.arcs.size());
        const long F = static_cast<long>(arr.faces.size());
        if (V - E + F != 2)
            throw GenericityError("build_arrangement: Euler relation violated");
    }

    // adjacency consistency: windings across an edge differ by exactly 1
    for (const auto& a : arr.arcs) {
        if (a.left_face < 0 || a.right_face < 0)
            throw GenericityError("build_arrangement: arc missing a face");
        const int wl = arr.faces[static_cast<std::size_t>(a.left_face)].winding;
        const int wr = arr.faces[static_cast<std::size_t>(a.right_face)].winding;
        if (wl - wr != 1)
            throw GenericityError("build_arrangement: face winding adjacency violated");
    }

    return arr;
}

} // namespace szplus
