#pragma once

// Basic planar geometry: points, segments, winding numbers, polyline helpers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace szplus {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double x_, double y_) : x(x_), y(y_) {}

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2 operator/(double s) const { return {x / s, y / s}; }
    Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
    Point2& operator-=(const Point2& o) { x -= o.x; y -= o.y; return *this; }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using Vec2 = Point2;

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }
inline double dist(const Point2& a, const Point2& b) { return (a - b).norm(); }
inline Vec2 normalized(const Vec2& a) {
    double n = a.norm();
    if (n == 0.0) throw std::domain_error("normalized: zero vector");
    return a / n;
}

inline std::complex<double> to_complex(const Point2& p) { return {p.x, p.y}; }
inline Point2 from_complex(const std::complex<double>& z) { return {z.real(), z.imag()}; }

// -------------------------------------------------------------------------
// Segment primitives

// Proper intersection of open segments (a0,a1) x (b0,b1).  Returns the
// parameters (s,t) in (0,1) of the intersection point on each segment.
struct SegHit {
    double s;       // parameter on segment a
    double t;       // parameter on segment b
    Point2 point;
};

inline std::optional<SegHit> segment_intersect(const Point2& a0, const Point2& a1,
                                               const Point2& b0, const Point2& b1,
                                               double eps = 1e-14) {
    const Vec2 da = a1 - a0;
    const Vec2 db = b1 - b0;
    const double denom = cross(da, db);
    if (std::abs(denom) < eps * (da.norm() * db.norm() + eps)) return std::nullopt;
    const Vec2 w = b0 - a0;
    const double s = cross(w, db) / denom;
    const double t = cross(w, da) / denom;
    if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) return std::nullopt;
    return SegHit{s, t, a0 + da * s};
}

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Vec2 ab = b - a;
    const double L2 = ab.norm2();
    if (L2 == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / L2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + ab * t);
}

// Signed angle of rotation carrying direction u to direction v, in (-pi, pi].
inline double turn_angle(const Vec2& u, const Vec2& v) {
    return std::atan2(cross(u, v), dot(u, v));
}

// -------------------------------------------------------------------------
// Winding numbers

// Winding number of a closed polyline around a point, by summation of the
// signed turn angles.  Robust for points bounded away from the curve.
inline int winding_number_angle(const std::vector<Point2>& poly, const Point2& p) {
    double total = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 u = poly[i] - p;
        const Vec2 v = poly[(i + 1) % n] - p;
        total += turn_angle(u, v);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

// Winding number by signed crossings of a horizontal ray (standard even-odd
// style count with orientation signs).  Used as the second, independent route.
inline int winding_number_ray(const std::vector<Point2>& poly, const Point2& p) {
    int w = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && cross(b - a, p - a) < 0.0) ++w;
        } else {
            if (b.y <= p.y && cross(b - a, p - a) > 0.0) --w;
        }
    }
    return w;
}

// -------------------------------------------------------------------------
// Polyline helpers

inline double polyline_length(const std::vector<Point2>& v, bool closed = true) {
    double L = 0.0;
    const std::size_t n = v.size();
    const std::size_t m = closed ? n : n - 1;
    for (std::size_t i = 0; i < m; ++i) L += dist(v[i], v[(i + 1) % n]);
    return L;
}

inline double signed_area(const std::vector<Point2>& v) {
    double a = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
    return 0.5 * a;
}

inline double curve_diameter(const std::vector<Point2>& v) {
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& p : v) {
        xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

// Resample a closed polyline to m approximately equally spaced vertices.
inline std::vector<Point2> resample_closed(const std::vector<Point2>& v, std::size_t m) {
    const std::size_t n = v.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + dist(v[i], v[(i + 1) % n]);
    const double L = cum[n];
    std::vector<Point2> out;
    out.reserve(m);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double s = L * static_cast<double>(k) / static_cast<double>(m);
        while (seg + 1 < n && cum[seg + 1] <= s) ++seg;
        const double ds = cum[seg + 1] - cum[seg];
        const double t = ds > 0.0 ? (s - cum[seg]) / ds : 0.0;
        out.push_back(v[seg] + (v[(seg + 1) % n] - v[seg]) * t);
    }
    return out;
}

// Uniform spatial hash over segments of one or more polylines; broad phase
// for all-pairs intersection and clearance queries.
class SegmentGrid {
public:
    struct Seg { Point2 a, b; std::uint32_t id; };

    explicit SegmentGrid(double cell) : cell_(cell) {}

    void add(const Point2& a, const Point2& b, std::uint32_t id) {
        segs_.push_back({a, b, id});
        stamp_.push_back(0);
        visit_cells(a, b, [&](std::int64_t key) { cells_[key].push_back(segs_.size() - 1); });
    }

    // Candidate segments near segment (a,b); each candidate reported once.
    template <typename F>
    void query(const Point2& a, const Point2& b, F&& f) const {
        ++epoch_;
        visit_cells(a, b, [&](std::int64_t key) {
            auto it = cells_.find(key);
            if (it == cells_.end()) return;
            for (std::size_t idx : it->second) {
                if (stamp_[idx] == epoch_) continue;
                stamp_[idx] = epoch_;
                f(segs_[idx]);
            }
        });
    }

    const std::vector<Seg>& segments() const { return segs_; }

private:
    template <typename F>
    void visit_cells(const Point2& a, const Point2& b, F&& f) const {
        const auto cx0 = static_cast<std::int64_t>(std::floor(std::min(a.x, b.x) / cell_)) - 1;
        const auto cx1 = static_cast<std::int64_t>(std::floor(std::max(a.x, b.x) / cell_)) + 1;
        const auto cy0 = static_cast<std::int64_t>(std::floor(std::min(a.y, b.y) / cell_)) - 1;
        const auto cy1 = static_cast<std::int64_t>(std::floor(std::max(a.y, b.y) / cell_)) + 1;
        for (std::int64_t cx = cx0; cx <= cx1; ++cx)
            for (std::int64_t cy = cy0; cy <= cy1; ++cy)
                f((cx << 32) ^ (cy & 0xffffffffll));
    }

    double cell_;
    std::vector<Seg> segs_;
    mutable std::vector<std::uint64_t> stamp_;
    mutable std::uint64_t epoch_ = 0;
    mutable std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

} // namespace szplus
