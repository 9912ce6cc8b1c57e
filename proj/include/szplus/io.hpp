// File formats: curve JSON, system-config JSON, trajectory CSV, invariant
// tables, arrangement export, family archives (JSON lines), and simple SVG
// rendering.  All writers go through an atomic temp-file + rename step.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "szplus/arrangement.hpp"
#include "szplus/curve.hpp"
#include "szplus/dynamics.hpp"
#include "szplus/errors.hpp"
#include "szplus/invariants.hpp"
#include "szplus/orbit.hpp"

namespace szplus {

using nlohmann::json;

// ---------------------------------------------------------------------------
// atomic writes

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw ConfigError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open for reading: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------
// curves

inline json curve_to_json(const PolyCurve& k) {
    json j;
    j["vertices"] = json::array();
    for (const auto& p : k.vertices) j["vertices"].push_back({p.x, p.y});
    j["closed"] = true;
    return j;
}

inline PolyCurve curve_from_json(const json& j) {
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ConfigError("curve JSON: missing \"vertices\" array");
    if (j.contains("closed") && !j["closed"].get<bool>())
        throw ConfigError("curve JSON: only closed curves are supported");
    PolyCurve k;
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2)
            throw ConfigError("curve JSON: vertex entries must be [x, y]");
        k.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    if (k.vertices.size() < 3)
        throw ConfigError("curve JSON: fewer than 3 vertices");
    return k;
}

inline void write_curve(const std::filesystem::path& path, const PolyCurve& k) {
    write_file_atomic(path, curve_to_json(k).dump(2) + "\n");
}

inline PolyCurve read_curve(const std::filesystem::path& path) {
    return curve_from_json(json::parse(read_file(path)));
}

// ---------------------------------------------------------------------------
// system configs: {"catalog_id": "...", "params": {...}}

inline json system_to_json(const SystemSpec& sys) {
    json j;
    j["catalog_id"] = catalog_name(sys.id);
    j["params"] = json::object();
    for (const auto& [k, v] : sys.params) j["params"][k] = v;
    return j;
}

inline SystemSpec system_from_json(const json& j) {
    if (!j.contains("catalog_id"))
        throw ConfigError("system JSON: missing \"catalog_id\"");
    std::map<std::string, double> params;
    if (j.contains("params"))
        for (const auto& [k, v] : j["params"].items())
            params[k] = v.get<double>();
    const auto name = j["catalog_id"].get<std::string>();
    const auto id = catalog_from_name(name);
    if (!id) throw ConfigError("unknown catalog_id: " + name);
    return make_system(*id, params);
}

// ---------------------------------------------------------------------------
// trajectories: CSV (t, q1, q2, qd1, qd2, E)

inline std::string trajectory_to_csv(const SystemSpec& sys,
                                     const Trajectory& traj) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "t,q1,q2,qd1,qd2,E\n";
    for (const auto& s : traj.samples)
        os << s.t << ',' << s.q.x << ',' << s.q.y << ',' << s.qdot.x << ','
           << s.qdot.y << ',' << energy(sys, s) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// invariants: JSON per curve and a batch CSV table

inline json invariants_to_json(const InvariantSet& s) {
    json j;
    j["j_plus"] = s.j_plus;
    j["w0"] = s.w0;
    j["two_j1"] = s.two_j1;
    j["j1"] = s.j1();
    j["j2"] = s.j2;
    j["odd_parity"] = s.odd_parity;
    j["method"] = s.method == InvariantSet::Method::Oracle      ? "oracle"
                  : s.method == InvariantSet::Method::Geometric ? "geometric"
                                                                : "tracked";
    return j;
}

struct InvariantRow {
    std::string id;
    bool ok = false;
    std::string note;
    std::size_t n = 0;
    int rotation = 0;
    InvariantSet inv;
};

inline std::string invariant_rows_to_csv(const std::vector<InvariantRow>& rows) {
    std::ostringstream os;
    os << "curve_id,status,n,rotation,w0,j_plus,two_j1,j2,method,note\n";
    for (const auto& r : rows) {
        os << r.id << ',' << (r.ok ? "ok" : "skipped") << ',';
        if (r.ok) {
            os << r.n << ',' << r.rotation << ',' << r.inv.w0 << ','
               << r.inv.j_plus << ',' << r.inv.two_j1 << ',' << r.inv.j2 << ','
               << (r.inv.method == InvariantSet::Method::Oracle ? "oracle"
                                                               : "geometric");
        } else {
            os << ",,,,,,";
        }
        os << ',' << r.note << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// arrangement export: faces with windings

inline json arrangement_to_json(const PolyCurve& k,
                                const CurveTolerances& tol = {}) {
    const auto arr = build_arrangement(k, tol);
    json j;
    j["n_double_points"] = arr.vertices.size();
    j["faces"] = json::array();
    for (const auto& f : arr.faces) {
        json fj;
        fj["winding"] = f.winding;
        fj["bounded"] = f.bounded;
        fj["sample"] = {f.sample_point.x, f.sample_point.y};
        j["faces"].push_back(fj);
    }
    return j;
}

// ---------------------------------------------------------------------------
// family archives: one JSON object per line, plus an event CSV

inline std::string family_to_jsonl(const std::vector<FamilyMember>& members) {
    std::ostringstream os;
    for (const auto& m : members) {
        json j;
        j["energy"] = m.orbit.c;
        j["initial"] = {m.orbit.initial.q.x, m.orbit.initial.q.y,
                        m.orbit.initial.qdot.x, m.orbit.initial.qdot.y};
        j["period"] = m.orbit.period;
        j["residual"] = m.orbit.residual;
        j["invariants"] = invariants_to_json(m.invariants);
        os << j.dump() << '\n';
    }
    return os.str();
}

inline const char* event_kind_name(EventRecord::Kind k) {
    switch (k) {
        case EventRecord::Kind::I0: return "I0";
        case EventRecord::Kind::IInf: return "IInf";
        case EventRecord::Kind::IIPlus: return "II+";
        case EventRecord::Kind::III: return "III";
        case EventRecord::Kind::DirectTangency: return "direct-tangency";
    }
    return "?";
}

inline std::string events_to_csv(const std::vector<EventRecord>& events) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "kind,param_before,param_after,delta_n,delta_w0,delta_rotation\n";
    for (const auto& ev : events)
        os << event_kind_name(ev.kind) << ',' << ev.param_before << ','
           << ev.param_after << ',' << ev.delta_n << ',' << ev.delta_w0 << ','
           << ev.delta_rotation << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace detail {

struct SvgFrame {
    double min_x = 0, min_y = 0, scale = 1;
    double width = 640, height = 640;

    double X(double x) const { return (x - min_x) * scale + 20.0; }
    double Y(double y) const { return height - 20.0 - (y - min_y) * scale; }
};

inline SvgFrame svg_frame(const std::vector<std::vector<Point2>>& polys) {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& poly : polys)
        for (const auto& p : poly) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    if (lo_x > hi_x) { lo_x = lo_y = -1; hi_x = hi_y = 1; }
    SvgFrame f;
    f.min_x = lo_x;
    f.min_y = lo_y;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    f.scale = 600.0 / span;
    f.width = (hi_x - lo_x) * f.scale + 40.0;
    f.height = (hi_y - lo_y) * f.scale + 40.0;
    return f;
}

inline void svg_polyline(std::ostringstream& os, const SvgFrame& f,
                         const std::vector<Point2>& pts, bool closed,
                         const char* color, double width) {
    if (pts.empty()) return;
    os << "<path d=\"M";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i ? " L" : " ") << f.X(pts[i].x) << ' ' << f.Y(pts[i].y);
    if (closed) os << " Z";
    os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
       << width << "\"/>\n";
}

} // namespace detail

// Curve with optional per-face winding labels.
inline std::string curve_to_svg(const PolyCurve& k, bool face_labels = true,
                                const CurveTolerances& tol = {}) {
    auto f = detail::svg_frame({k.vertices});
    std::ostringstream os;
    os << std::setprecision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width
       << "\" height=\"" << f.height << "\">\n";
    detail::svg_polyline(os, f, k.vertices, true, "#1b6ca8", 1.5);
    if (face_labels) {
        const auto arr = build_arrangement(k, tol);
        for (const auto& face : arr.faces) {
            if (!face.bounded) continue;
            os << "<text x=\"" << f.X(face.sample_point.x) << "\" y=\""
               << f.Y(face.sample_point.y)
               << "\" font-size=\"14\" text-anchor=\"middle\">" << face.winding
               << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

// Trajectory plot with the zero-velocity boundary of the Hill region.
inline std::string trajectory_to_svg(const SystemSpec& sys,
                                     const Trajectory& traj, double c,
                                     double margin = 0.6) {
    std::vector<Point2> path;
    for (const auto& s : traj.samples) path.push_back(s.q);

    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& p : path) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    std::vector<std::vector<Point2>> all{path};
    std::vector<ContourCurve> hill;
    try {
        hill = zero_velocity_contour(sys, c,
                                     {lo_x - margin, hi_x + margin},
                                     {lo_y - margin, hi_y + margin}, 220);
        for (const auto& cc : hill) all.push_back(cc.points);
    } catch (const std::exception&) {
        // no boundary inside the window (or a critical level): plot orbit only
    }

    auto f = detail::svg_frame(all);
    std::ostringstream os;
    os << std::setprecision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width
       << "\" height=\"" << f.height << "\">\n";
    for (const auto& cc : hill)
        detail::svg_polyline(os, f, cc.points, cc.closed, "#999999", 1.0);
    detail::svg_polyline(os, f, path, false, "#1b6ca8", 1.2);
    for (const auto& s : singular_points(sys))
        os << "<circle cx=\"" << f.X(s.x) << "\" cy=\"" << f.Y(s.y)
           << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace szplus
