#pragma once

// Closed oriented polyline curves, genericity validation, double points,
// rotation and winding numbers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "szplus/errors.hpp"
#include "szplus/geom.hpp"

namespace szplus {

// A closed oriented plane curve, represented by its vertex polyline.
// The edge i runs from vertices[i] to vertices[(i+1) % n].
struct PolyCurve {
    std::vector<Point2> vertices;
    bool allow_origin = false;   // set for regularized collision samples

    std::size_t size() const { return vertices.size(); }
    const Point2& at(std::size_t i) const { return vertices[i % vertices.size()]; }

    void check_well_formed() const {
        if (vertices.size() < 8)
            throw StructuralError("PolyCurve: need at least 8 vertices");
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!vertices[i].finite())
                throw StructuralError("PolyCurve: non-finite vertex");
            if (dist(vertices[i], vertices[(i + 1) % n]) == 0.0)
                throw StructuralError("PolyCurve: repeated consecutive vertex");
        }
    }
};

struct DoublePoint {
    Point2 position;
    double param_a = 0.0;    // arc-length parameter of the first branch
    double param_b = 0.0;    // arc-length parameter of the second branch (> param_a)
    std::size_t seg_a = 0;   // edge index of the first branch
    std::size_t seg_b = 0;
    double frac_a = 0.0;     // position along edge seg_a in (0,1)
    double frac_b = 0.0;
    double crossing_angle = 0.0;   // in (0, pi)
    int sign = 0;            // sign of det(tangent_a, tangent_b)
};

struct CurveTolerances {
    double theta_min = 10.0 * M_PI / 180.0;  // minimal transversality angle
    double eps_trip_rel = 1e-6;              // near-triple threshold, rel. diameter
    double eps0_rel = 1e-6;                  // origin proximity, rel. diameter
    double eps_tangency_rel = 1e-6;          // strand proximity, rel. diameter
    double min_seg_rel = 1e-9;               // minimal edge length, rel. diameter
};

struct GenericityViolation {
    enum class Kind { NearTangency, NearTriple, OriginHit, ShortSegment };
    Kind kind;
    Point2 location;
    double measure = 0.0;   // the offending angle or distance
};

struct GenericityReport {
    bool is_generic = true;
    std::vector<GenericityViolation> violations;
};

namespace detail {

inline std::vector<double> cumulative_arclength(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + dist(v[i], v[(i + 1) % n]);
    return cum;
}

// Cyclic arclength gap between two parameters on a curve of length L.
inline double cyclic_gap(double s1, double s2, double L) {
    double d = std::fmod(std::abs(s1 - s2), L);
    return std::min(d, L - d);
}

} // namespace detail

// All transverse self-intersections of the curve, grid-accelerated.
// Adjacency along the curve is excluded by requiring the two branches to be
// separated by an arclength gap well above the local edge scale.
inline std::vector<DoublePoint> double_points_raw(const PolyCurve& curve) {
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    const auto cum = detail::cumulative_arclength(v);
    const double L = cum[n];
    const double cell = std::max(L / static_cast<double>(n) * 4.0, 1e-12);

    SegmentGrid grid(cell);
    for (std::size_t i = 0; i < n; ++i)
        grid.add(v[i], v[(i + 1) % n], static_cast<std::uint32_t>(i));

    std::vector<DoublePoint> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a0 = v[i];
        const Point2& a1 = v[(i + 1) % n];
        grid.query(a0, a1, [&](const SegmentGrid::Seg& s) {
            const std::size_t j = s.id;
            if (j <= i) return;
            // skip edges adjacent along the curve
            const std::size_t gap = std::min(j - i, n - (j - i));
            if (gap <= 1) return;
            auto hit = segment_intersect(a0, a1, s.a, s.b);
            if (!hit) return;
            DoublePoint dp;
            dp.position = hit->point;
            dp.seg_a = i;
            dp.seg_b = j;
            dp.frac_a = hit->s;
            dp.frac_b = hit->t;
            dp.param_a = cum[i] + hit->s * (cum[i + 1] - cum[i]);
            dp.param_b = cum[j] + hit->t * (cum[j + 1] - cum[j]);
            const Vec2 ta = a1 - a0;
            const Vec2 tb = s.b - s.a;
            double ang = std::abs(turn_angle(ta, tb));
            dp.crossing_angle = ang;
            dp.sign = cross(ta, tb) > 0.0 ? 1 : -1;
            out.push_back(dp);
        });
    }
    std::sort(out.begin(), out.end(), [](const DoublePoint& a, const DoublePoint& b) {
        if (a.param_a != b.param_a) return a.param_a < b.param_a;
        return a.param_b < b.param_b;
    });
    return out;
}

inline GenericityReport validate_genericity(const PolyCurve& curve,
                                            const CurveTolerances& tol = {}) {
    curve.check_well_formed();
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    const double diam = curve_diameter(v);
    const double eps0 = tol.eps0_rel * diam;
    const double eps_trip = tol.eps_trip_rel * diam;
    const double eps_tan = tol.eps_tangency_rel * diam;
    const double min_seg = tol.min_seg_rel * diam;

    GenericityReport rep;
    auto flag = [&](GenericityViolation::Kind k, Point2 where, double m) {
        rep.violations.push_back({k, where, m});
    };

    for (std::size_t i = 0; i < n; ++i) {
        const double len = dist(v[i], v[(i + 1) % n]);
        if (len < min_seg)
            flag(GenericityViolation::Kind::ShortSegment, v[i], len);
    }

    // origin proximity
    if (!curve.allow_origin) {
        for (std::size_t i = 0; i < n; ++i) {
            const double d = point_segment_distance({0, 0}, v[i], v[(i + 1) % n]);
            if (d < eps0) {
                flag(GenericityViolation::Kind::OriginHit, v[i], d);
                break;
            }
        }
    }

    const auto dps = double_points_raw(curve);

    // transversality of crossings
    for (const auto& dp : dps) {
        const double off = std::min(dp.crossing_angle, M_PI - dp.crossing_angle);
        if (off < tol.theta_min)
            flag(GenericityViolation::Kind::NearTangency, dp.position, off);
    }

    // near-triple: two double points too close together
    for (std::size_t i = 0; i < dps.size(); ++i)
        for (std::size_t j = i + 1; j < dps.size(); ++j)
            if (dist(dps[i].position, dps[j].position) < eps_trip)
                flag(GenericityViolation::Kind::NearTriple, dps[i].position,
                     dist(dps[i].position, dps[j].position));

    // non-crossing strand proximity: segments much closer than eps_tan while
    // far apart along the curve
    if (eps_tan > 0.0) {
        const auto cum = detail::cumulative_arclength(v);
        const double L = cum[n];
        SegmentGrid grid(std::max(4.0 * L / static_cast<double>(n), eps_tan));
        for (std::size_t i = 0; i < n; ++i)
            grid.add(v[i], v[(i + 1) % n], static_cast<std::uint32_t>(i));
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& a0 = v[i];
            const Point2& a1 = v[(i + 1) % n];
            grid.query(a0, a1, [&](const SegmentGrid::Seg& s) {
                const std::size_t j = s.id;
                if (j <= i) return;
                const std::size_t gap = std::min(j - i, n - (j - i));
                if (gap <= 2) return;
                if (segment_intersect(a0, a1, s.a, s.b)) return;  // proper crossing: fine
                const double d = std::min(
                    std::min(point_segment_distance(a0, s.a, s.b),
                             point_segment_distance(a1, s.a, s.b)),
                    std::min(point_segment_distance(s.a, a0, a1),
                             point_segment_distance(s.b, a0, a1)));
                const double arc_gap =
                    detail::cyclic_gap(0.5 * (cum[i] + cum[i + 1]), 0.5 * (cum[j] + cum[j + 1]), L);
                if (d < eps_tan && arc_gap > 50.0 * std::max(d, eps_tan))
                    flag(GenericityViolation::Kind::NearTangency, a0, d);
            });
        }
    }

    rep.is_generic = rep.violations.empty();
    return rep;
}

// Double points of a generic curve.
inline std::vector<DoublePoint> double_points(const PolyCurve& curve,
                                              const CurveTolerances& tol = {}) {
    auto rep = validate_genericity(curve, tol);
    if (!rep.is_generic)
        throw GenericityError("double_points: curve is not a generic immersion ("
                              + std::to_string(rep.violations.size()) + " violations)");
    return double_points_raw(curve);
}

// Rotation number: total turning of the tangent divided by 2*pi.
inline int rotation_number(const PolyCurve& curve) {
    curve.check_well_formed();
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = v[(i + 1) % n] - v[i];
        const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
        if (e0.norm() == 0.0 || e1.norm() == 0.0)
            throw StructuralError("rotation_number: zero-length segment");
        total += turn_angle(e0, e1);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

// Winding number of the curve around a point, by signed ray crossings with a
// random ray direction redrawn on near-degenerate hits.
inline int winding_number(const PolyCurve& curve, const Point2& p,
                          const CurveTolerances& tol = {}) {
    const auto& v = curve.vertices;
    const std::size_t n = v.size();
    const double diam = curve_diameter(v);
    {
        double dmin = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < n; ++i)
            dmin = std::min(dmin, point_segment_distance(p, v[i], v[(i + 1) % n]));
        if (dmin < tol.eps0_rel * diam)
            throw ProximityError("winding_number: point lies on the curve");
    }

    std::mt19937 rng(0x5a17u);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double phi = attempt == 0 ? 0.123456 : uni(rng);
        const Vec2 d{std::cos(phi), std::sin(phi)};
        int w = 0;
        bool degenerate = false;
        for (std::size_t i = 0; i < n && !degenerate; ++i) {
            const Vec2 e = v[(i + 1) % n] - v[i];
            const double denom = cross(d, e);
            const Vec2 rel = v[i] - p;
            if (std::abs(denom) < 1e-12 * e.norm()) {
                // parallel: degenerate only if the segment overlaps the ray line
                if (std::abs(cross(d, rel)) < 1e-12 * std::max(rel.norm(), e.norm()))
                    degenerate = true;
                continue;
            }
            // solve p + s d = v[i] + t e
            const double t = cross(d, rel) / (-denom);   // along segment
            const double s = cross(rel, e) / denom;      // along ray
            if (t < 1e-9 || t > 1.0 - 1e-9) {
                if (t > -1e-9 && t < 1.0 + 1e-9 && s > 0.0) degenerate = true;
                continue;
            }
            if (s <= 0.0) continue;
            w += denom > 0.0 ? 1 : -1;
        }
        if (!degenerate) return w;
    }
    throw GenericityError("winding_number: could not find a generic ray");
}

} // namespace szplus
