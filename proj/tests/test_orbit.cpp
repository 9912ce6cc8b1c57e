// Symmetric-shooting periodic orbits, energy continuation, projection to
// closed curves, event detection along curve families, and the constancy of
// the two invariants across every event kind.

#include <catch2/catch_amalgamated.hpp>

#include "szplus/families.hpp"
#include "szplus/orbit.hpp"

using namespace szplus;

TEST_CASE("shooting recovers the circular orbit of the radial problem") {
    auto sys = make_system(CatalogId::Kepler);
    auto orb = find_periodic_orbit(sys, -0.5, 1.0);
    REQUIRE(orb.initial.q.x == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(orb.period == Catch::Approx(2.0 * M_PI).margin(1e-8));
    REQUIRE(orb.residual <= 1e-8);

    // every symmetric start closes after one revolution; at the same energy a
    // different start gives an ellipse with the same period
    auto ell = find_periodic_orbit(sys, -0.5, 0.8);
    REQUIRE(ell.period == Catch::Approx(2.0 * M_PI).margin(1e-8));
    REQUIRE(ell.residual <= 1e-8);
}

TEST_CASE("shooting finds the counter-rotating circular orbit in the rotating frame") {
    auto sys = make_system(CatalogId::RotatingKepler);
    // radius 1, frame-relative velocity (0, +2), energy +1/2, frame period pi
    auto orb = find_periodic_orbit(sys, 0.5, 1.03);
    REQUIRE(orb.initial.q.x == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(orb.initial.qdot.y == Catch::Approx(2.0).margin(1e-8));
    REQUIRE(orb.period == Catch::Approx(M_PI).margin(1e-8));
    REQUIRE(orb.residual <= 1e-8);
}

TEST_CASE("shooting finds a co-rotating circular orbit below the critical energy") {
    auto sys = make_system(CatalogId::RotatingKepler);
    // circular branch v = a - a^{-1/2} at radius a: energy -1/(2a) - sqrt(a),
    // frame-relative velocity negative inside radius 1
    const double a = 0.5;
    const double c = -0.5 / a - std::sqrt(a);
    ShootingOptions opt;
    opt.vy_sign = -1.0;
    auto orb = find_periodic_orbit(sys, c, 0.52, opt);
    REQUIRE(orb.initial.q.x == Catch::Approx(a).margin(1e-6));
    const double rate = std::abs(1.0 - std::pow(a, -1.5));  // relative rate
    REQUIRE(orb.period == Catch::Approx(2.0 * M_PI / rate).margin(1e-6));
    REQUIRE(orb.residual <= 1e-8);
}

TEST_CASE("continuation follows the circular branch across energies") {
    auto sys = make_system(CatalogId::RotatingKepler);
    auto start = find_periodic_orbit(sys, 0.5, 1.0);
    auto fam = continue_family(sys, start, 1.1, 30);
    REQUIRE(fam.size() >= 30);
    for (const auto& orb : fam) {
        REQUIRE(orb.residual <= 1e-7);
        // each member stays on the counter-rotating circular branch:
        // radius a solves c = 3/(2a) ... checked via the closure alone plus
        // monotone radius growth
        REQUIRE(orb.initial.q.x >= 0.99);
    }
    for (std::size_t i = 1; i < fam.size(); ++i)
        REQUIRE(fam[i].initial.q.x > fam[i - 1].initial.q.x);
}

TEST_CASE("projection of a periodic orbit is a closed generic curve") {
    auto sys = make_system(CatalogId::RotatingKepler);
    auto orb = find_periodic_orbit(sys, 0.5, 1.0);
    auto k = project_to_curve(orb);
    REQUIRE(k.vertices.size() == 256);
    REQUIRE(double_points(k).empty());
    auto inv = invariants_geometric(k);
    REQUIRE(std::abs(inv.w0) == 1);
    REQUIRE(inv.j_plus == 0);
}

TEST_CASE("local cusp model discriminant") {
    REQUIRE(cusp_discriminant(0.0, -1.0) == LocalCuspModel::Loop);
    REQUIRE(cusp_discriminant(1.0, 0.0) == LocalCuspModel::NoLoop);
    REQUIRE(cusp_discriminant(0.0, 0.0) == LocalCuspModel::Cusp);
    REQUIRE(cusp_discriminant(2.0, -3.0) == LocalCuspModel::Cusp);
    REQUIRE(cusp_discriminant(2.0, -3.1) == LocalCuspModel::Loop);
    REQUIRE(cusp_discriminant(2.0, -2.9) == LocalCuspModel::NoLoop);
}

namespace {

struct NamedFamily {
    const char* name;
    CurveFamily fam;
    double lo, hi;
    EventRecord::Kind kind;
};

std::vector<NamedFamily> event_families() {
    using namespace families;
    return {
        {"collision", [](double s) { return collision_family(s); }, 0.85, 1.15,
         EventRecord::Kind::I0},
        {"collision-v", [](double s) { return collision_family(s, true); },
         0.85, 1.15, EventRecord::Kind::I0},
        {"cusp-loop", [](double s) { return zero_velocity_family(s); }, 0.3,
         0.7, EventRecord::Kind::IInf},
        {"cusp-loop-m", [](double s) { return zero_velocity_family(s, true); },
         0.3, 0.7, EventRecord::Kind::IInf},
        {"inverse-tangency",
         [](double s) { return inverse_tangency_family(s); }, 1.0, 1.45,
         EventRecord::Kind::IIPlus},
        {"inverse-tangency-b",
         [](double s) { return inverse_tangency_family(s, true); }, 1.0, 1.45,
         EventRecord::Kind::IIPlus},
        {"triple-point", [](double s) { return triple_point_family(s); }, 0.85,
         1.15, EventRecord::Kind::III},
        {"triple-point-m",
         [](double s) { return triple_point_family(s, true); }, 0.85, 1.15,
         EventRecord::Kind::III},
    };
}

} // namespace

TEST_CASE("each admissible event kind is detected and classified") {
    for (const auto& nf : event_families()) {
        INFO(nf.name);
        auto evs = detect_events(nf.fam, nf.lo, nf.hi);
        REQUIRE(evs.size() == 1);
        REQUIRE(evs.front().kind == nf.kind);
    }
}

TEST_CASE("invariants are constant across every admissible event") {
    for (const auto& nf : event_families()) {
        INFO(nf.name);
        auto evs = detect_events(nf.fam, nf.lo, nf.hi);
        REQUIRE(evs.size() == 1);
        std::vector<PolyCurve> members{nf.fam(nf.lo), nf.fam(nf.hi)};
        auto rep = verify_family_invariants(members, {evs});
        REQUIRE(rep.invariants_constant);
        REQUIRE(rep.tracked_matches);
        REQUIRE_FALSE(rep.direct_tangency_flagged);
    }
}

TEST_CASE("collision event trades double points for origin winding") {
    auto fam = [](double s) { return families::collision_family(s); };
    auto evs = detect_events(fam, 0.85, 1.15);
    REQUIRE(evs.size() == 1);
    REQUIRE(evs.front().delta_n == -1);
    REQUIRE(evs.front().delta_w0 == -2);
    // J+ jumps by 2 while 2J1 = 2J+ + w0^2 stays put
    auto before = invariants_geometric(fam(0.9));
    auto after = invariants_geometric(fam(1.1));
    REQUIRE(after.j_plus - before.j_plus == 2);
    REQUIRE(before.two_j1 == after.two_j1);
    REQUIRE(before.j2 == after.j2);
}

TEST_CASE("a direct tangency is flagged and breaks invariance") {
    auto fam = [](double s) { return families::direct_tangency_family(s); };
    auto evs = detect_events(fam, 2.2, 3.4);
    REQUIRE(evs.size() == 1);
    REQUIRE(evs.front().kind == EventRecord::Kind::DirectTangency);

    std::vector<PolyCurve> members{fam(2.4), fam(3.2)};
    auto rep = verify_family_invariants(members, {evs});
    REQUIRE(rep.direct_tangency_flagged);
    REQUIRE_FALSE(rep.invariants_constant);
    // the tracked update (+2 per direct tangency) still follows the geometry
    REQUIRE(rep.tracked_matches);
    REQUIRE(rep.geometric.back().two_j1 - rep.geometric.front().two_j1 == 4);
}

TEST_CASE("a dynamical family with no events keeps both invariants") {
    auto sys = make_system(CatalogId::RotatingKepler);
    auto start = find_periodic_orbit(sys, 0.5, 1.0);
    auto fam = continue_family(sys, start, 0.9, 12);
    std::vector<PolyCurve> members;
    for (const auto& orb : fam) members.push_back(project_to_curve(orb));
    std::vector<std::vector<EventRecord>> events(members.size() - 1);
    auto rep = verify_family_invariants(members, events);
    REQUIRE(rep.invariants_constant);
    REQUIRE(rep.tracked_matches);
    REQUIRE_FALSE(rep.direct_tangency_flagged);
}
