// Separable potentials, their first integrals, and commutation checks.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "szplus/integrability.hpp"

using namespace szplus;

namespace {

Point2 random_point_away(std::mt19937& rng, const SystemSpec& sys,
                         double margin = 0.3) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> rad(0.4, 2.5);
    const auto sing = singular_points(sys);
    for (;;) {
        const double a = ang(rng);
        const Point2 q{rad(rng) * std::cos(a), rad(rng) * std::sin(a)};
        bool near = q.norm() < 0.2;
        for (const auto& s : sing)
            if (dist(q, s) < margin) near = true;
        if (!near) return q;
    }
}

} // namespace

TEST_CASE("separable rewrites reproduce the catalog potentials") {
    const CatalogId ids[] = {CatalogId::Stark, CatalogId::FrozenHillCentrifugal,
                             CatalogId::Euler, CatalogId::Lagrange};
    std::mt19937 rng(31);
    for (auto id : ids) {
        auto sys = make_system(id);
        auto spec = catalog_separable(sys);
        for (int i = 0; i < 100; ++i) {
            const Point2 q = random_point_away(rng, sys);
            const double direct = potential_V(sys, q);
            const double recon = separable_potential(spec, q);
            INFO(catalog_name(id) << " q=(" << q.x << "," << q.y << ")");
            REQUIRE(std::abs(direct - recon) <=
                    1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("two-center identity for the elastic extension") {
    // (u^4 - v^4) / (u^2 - v^2) = u^2 + v^2 = r^2 + c^2
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const double c = 0.7;
    for (int i = 0; i < 100; ++i) {
        const Point2 q{d(rng), d(rng)};
        const double r1 = std::hypot(q.x + c, q.y);
        const double r2 = std::hypot(q.x - c, q.y);
        if (r1 < 0.1 || r2 < 0.1) continue;
        const double u = 0.5 * (r1 + r2), v = 0.5 * (r1 - r2);
        const double lhs = (u * u * u * u - v * v * v * v) / (u * u - v * v);
        const double rhs = q.norm2() + c * c;
        REQUIRE(lhs == Catch::Approx(rhs).margin(1e-10));
    }
}

TEST_CASE("integral formula spot checks") {
    // zero-field case f = g = -1/2 reduces to L p2 - q1 / r
    SeparablePotentialSpec kep;
    kep.family = SeparableFamily::Sep1;
    kep.f = [](double) { return -0.5; };
    kep.g = [](double) { return -0.5; };
    REQUIRE(integral_sep1(kep, {1, 0}, {0, 1}) == Catch::Approx(0.0).margin(1e-14));

    // symmetric two-center state evaluated against a by-hand expansion
    SeparablePotentialSpec two;
    two.family = SeparableFamily::Sep2;
    two.c = 1.0;
    two.f = [](double s) { return -s; };
    two.g = [](double s) { return 0.5 * s; };
    const Point2 q{0, 1};
    const Vec2 p{1, 0};
    // r1 = r2 = sqrt(2), u = sqrt(2), v = 0
    const double L = q.x * p.y - q.y * p.x;   // = -1
    const double expect = L * L + 1.0 * p.x * p.x +
                          2.0 * (0.0 * (-std::sqrt(2.0)) - 2.0 * 0.0) / 2.0;
    REQUIRE(integral_sep2(two, q, p) == Catch::Approx(expect).margin(1e-12));
}

TEST_CASE("commutation and conservation for the four separable systems") {
    const CatalogId ids[] = {CatalogId::Stark, CatalogId::FrozenHillCentrifugal,
                             CatalogId::Euler, CatalogId::Lagrange};
    for (auto id : ids) {
        auto sys = make_system(id);
        auto rep = poisson_bracket_residual(sys, 1000, 2024, 10);
        INFO(catalog_name(id) << " bracket=" << rep.bracket_residual
                              << " drift=" << rep.value_drift);
        REQUIRE(rep.n_samples == 1000);
        REQUIRE(rep.bracket_residual <= 1e-6);
        REQUIRE(rep.value_drift <= 1e-7);
    }
}

TEST_CASE("magnetic systems are rejected") {
    REQUIRE_THROWS_AS(poisson_bracket_residual(make_system(CatalogId::RotatingKepler)),
                      ConfigError);
    REQUIRE_THROWS_AS(catalog_separable(make_system(CatalogId::Hill)), ConfigError);
}
