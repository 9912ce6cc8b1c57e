// System catalog, integrator fidelity, and regularized-coordinate checks.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "szplus/dynamics.hpp"
#include "szplus/regularization.hpp"

using namespace szplus;

TEST_CASE("catalog potential values") {
    REQUIRE(potential_V(make_system(CatalogId::Kepler), {2, 0}) ==
            Catch::Approx(-0.5).margin(1e-14));
    REQUIRE(potential_V(make_system(CatalogId::Hill), {1, 0}) ==
            Catch::Approx(-2.5).margin(1e-14));
    REQUIRE(potential_V(make_system(CatalogId::FrozenHillCentrifugal), {1, 0}) ==
            Catch::Approx(-3.0).margin(1e-14));
    REQUIRE_THROWS_AS(potential_V(make_system(CatalogId::Kepler), {0, 0}),
                      SingularityError);
}

TEST_CASE("catalog gradient values and magnetic field") {
    auto kepler = make_system(CatalogId::Kepler);
    auto g = grad_V(kepler, {1, 0});
    REQUIRE(g.x == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(g.y == Catch::Approx(0.0).margin(1e-14));

    auto stark = make_system(CatalogId::Stark, {{"E", 0.1}});
    g = grad_V(stark, {1, 0});
    REQUIRE(g.x == Catch::Approx(0.9).margin(1e-12));

    auto rk = make_system(CatalogId::RotatingKepler);
    g = grad_V(rk, {2, 0});
    REQUIRE(g.x == Catch::Approx(-1.75).margin(1e-12));

    REQUIRE(magnetic_B(rk) == Catch::Approx(2.0));
    REQUIRE(magnetic_B(make_system(CatalogId::FrozenHill)) == 0.0);
    REQUIRE(magnetic_B(make_system(CatalogId::Zeeman, {{"B", 0.3}})) ==
            Catch::Approx(0.3));
}

TEST_CASE("analytic gradient matches finite differences on all systems") {
    const CatalogId all[] = {
        CatalogId::Kepler, CatalogId::Stark, CatalogId::Zeeman,
        CatalogId::DiamagneticKepler, CatalogId::RotatingKepler, CatalogId::Rtbp,
        CatalogId::Hill, CatalogId::FrozenHill, CatalogId::FrozenHillCentrifugal,
        CatalogId::Euler, CatalogId::Lagrange};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> rad(0.4, 2.0);
    const double h = 1e-5;
    for (auto id : all) {
        auto sys = make_system(id);
        const auto sing = singular_points(sys);
        int done = 0;
        while (done < 100) {
            const double a = ang(rng), r = rad(rng);
            const Point2 q{r * std::cos(a), r * std::sin(a)};
            bool ok = true;
            for (const auto& s : sing)
                if (dist(q, s) < 0.2) ok = false;
            if (!ok) continue;
            ++done;
            const Vec2 g = grad_V(sys, q);
            const Vec2 fd{
                (potential_V(sys, {q.x + h, q.y}) - potential_V(sys, {q.x - h, q.y})) /
                    (2 * h),
                (potential_V(sys, {q.x, q.y + h}) - potential_V(sys, {q.x, q.y - h})) /
                    (2 * h)};
            const double scale = std::max(1.0, g.norm());
            INFO(catalog_name(id) << " q=(" << q.x << "," << q.y << ")");
            REQUIRE(dist(g, fd) / scale < 1e-6);
        }
    }
}

TEST_CASE("kepler circular orbit: closure and energy over 10 periods") {
    auto sys = make_system(CatalogId::Kepler);
    PhaseState s0{{1, 0}, {0, 1}, 0.0};
    auto traj = integrate(sys, s0, 10.0 * 2.0 * M_PI);
    REQUIRE(traj.max_energy_drift() <= 1e-8);
    for (const auto& s : traj.samples)
        REQUIRE(std::abs(s.q.norm() - 1.0) < 1e-8);
    const auto& last = traj.samples.back();
    REQUIRE(dist(last.q, s0.q) < 1e-8);
    REQUIRE(dist(last.qdot, s0.qdot) < 1e-8);
}

TEST_CASE("rotating-frame circular orbits") {
    auto sys = make_system(CatalogId::RotatingKepler);
    // corotating circular orbit is an equilibrium at energy -3/2
    PhaseState dir{{1, 0}, {0, 0}, 0.0};
    REQUIRE(energy(sys, dir) == Catch::Approx(-1.5).margin(1e-12));
    auto traj = integrate(sys, dir, 5.0);
    for (const auto& s : traj.samples) REQUIRE(dist(s.q, {1, 0}) < 1e-8);
    // counter-rotating circular orbit at energy +1/2 stays on the unit circle
    PhaseState retro{{1, 0}, {0, 2}, 0.0};
    REQUIRE(energy(sys, retro) == Catch::Approx(0.5).margin(1e-12));
    auto t2 = integrate(sys, retro, 10.0 * M_PI);
    REQUIRE(t2.max_energy_drift() <= 1e-8);
    for (const auto& s : t2.samples)
        REQUIRE(std::abs(s.q.norm() - 1.0) < 1e-8);
}

namespace {

struct DriftCase {
    CatalogId id;
    std::map<std::string, double> params;
    PhaseState s0;
    double T;
};

} // namespace

TEST_CASE("energy drift <= 1e-8 over long spans on every catalog system") {
    const DriftCase cases[] = {
        {CatalogId::Kepler, {}, {{1, 0}, {0, 1}}, 20 * M_PI},
        {CatalogId::Stark, {{"E", 0.02}}, {{1, 0}, {0, 1}}, 20 * M_PI},
        {CatalogId::Zeeman, {{"B", 0.3}}, {{1, 0}, {0, 1}}, 20 * M_PI},
        {CatalogId::DiamagneticKepler, {{"B", 0.3}}, {{1, 0}, {0, 1}}, 20 * M_PI},
        {CatalogId::RotatingKepler, {}, {{1, 0}, {0, 2}}, 20 * M_PI},
        {CatalogId::Rtbp, {{"mu", 0.99}}, {{0.3, 0}, {0, -2.12}}, 10.0},
        {CatalogId::Hill, {}, {{0.2, 0}, {0, -2.02}}, 6.0},
        {CatalogId::FrozenHill, {}, {{0.2, 0}, {0, 2.21}}, 6.0},
        {CatalogId::FrozenHillCentrifugal, {}, {{0.2, 0}, {0, 2.21}}, 6.0},
        {CatalogId::Euler, {}, {{-0.4, 0}, {0, 2.24}}, 3.0},
        {CatalogId::Lagrange, {}, {{-0.4, 0}, {0, 2.24}}, 3.0},
    };
    IntegrateOptions opt;
    opt.rtol = 1e-13;
    opt.atol = 1e-13;
    for (const auto& dc : cases) {
        auto sys = make_system(dc.id, dc.params);
        auto traj = integrate(sys, dc.s0, dc.T, opt);
        INFO(catalog_name(dc.id));
        REQUIRE_FALSE(traj.handoff);
        REQUIRE(traj.max_energy_drift() <= 1e-8);
    }
}

TEST_CASE("angular-momentum variant conserved for rotation-symmetric systems") {
    const CatalogId ids[] = {CatalogId::Kepler, CatalogId::Zeeman,
                             CatalogId::RotatingKepler};
    for (auto id : ids) {
        auto sys = make_system(id);
        PhaseState s0{{1, 0}, {0, id == CatalogId::RotatingKepler ? 2.0 : 1.0}};
        auto traj = integrate(sys, s0, 15.0);
        const double B = magnetic_B(sys);
        auto Lvar = [&](const PhaseState& s) {
            return s.q.x * s.qdot.y - s.q.y * s.qdot.x - 0.5 * B * s.q.norm2();
        };
        const double L0 = Lvar(traj.samples.front());
        for (const auto& s : traj.samples) {
            INFO(catalog_name(id));
            REQUIRE(std::abs(Lvar(s) - L0) <= 1e-8 * std::max(1.0, std::abs(L0)));
        }
    }
}

TEST_CASE("time reversal with flipped magnetic field") {
    auto fwd = make_system(CatalogId::Zeeman, {{"B", 0.3}});
    auto bwd = make_system(CatalogId::Zeeman, {{"B", -0.3}});
    PhaseState s0{{1.1, 0.2}, {0.1, 0.9}};
    auto t1 = integrate(fwd, s0, 7.0);
    const auto& end = t1.samples.back();
    PhaseState flipped{end.q, end.qdot * -1.0, 0.0};
    auto t2 = integrate(bwd, flipped, 7.0);
    const auto& back = t2.samples.back();
    REQUIRE(dist(back.q, s0.q) < 1e-6);
    REQUIRE(dist(back.qdot, s0.qdot * -1.0) < 1e-6);
}

TEST_CASE("zero-time integration and close-approach handoff") {
    auto sys = make_system(CatalogId::Kepler);
    PhaseState s0{{1, 0}, {0, 1}};
    auto t0 = integrate(sys, s0, 0.0);
    REQUIRE(t0.samples.size() == 1);

    PhaseState fall{{0.5, 0}, {0, 0.05}};
    IntegrateOptions opt;
    opt.r_switch = 0.05;
    auto tf = integrate(sys, fall, 10.0, opt);
    REQUIRE(tf.handoff);
    REQUIRE(tf.handoff_state.q.norm() < 0.05 + 1e-6);
}

TEST_CASE("hill membership and zero-velocity contour") {
    auto sys = make_system(CatalogId::Kepler);
    REQUIRE(hill_membership(sys, -0.5, {1, 0}) == HillMembership::Inside);
    REQUIRE(hill_membership(sys, -0.5, {2, 0}) == HillMembership::Boundary);
    REQUIRE(hill_membership(sys, -0.5, {3, 0}) == HillMembership::Outside);

    auto cs = zero_velocity_contour(sys, -0.5, {-3, -3}, {3, 3}, 200);
    REQUIRE(cs.size() == 1);
    REQUIRE(cs[0].closed);
    for (const auto& p : cs[0].points)
        REQUIRE(std::abs(p.norm() - 2.0) < 0.02);

    // electric field switched off reduces to the pure Coulomb contour
    auto stark0 = make_system(CatalogId::Stark, {{"E", 0.0}});
    auto cs2 = zero_velocity_contour(stark0, -0.5, {-3, -3}, {3, 3}, 200);
    REQUIRE(cs2.size() == 1);

    auto hill = make_system(CatalogId::Hill);
    auto cs3 = zero_velocity_contour(hill, -2.3, {-1, -1}, {1, 1}, 200);
    bool around_origin = false;
    for (const auto& c : cs3)
        if (c.closed && std::abs(winding_number_angle(c.points, {0, 0})) == 1)
            around_origin = true;
    REQUIRE(around_origin);
}

// ---------------------------------------------------------------------------
// regularized coordinates
// ---------------------------------------------------------------------------

TEST_CASE("complex-squaring map and its inverse") {
    RegPhaseState s;
    s.v = {1, 0};
    s.u = {0, 2};
    auto m = lc_map(s);
    REQUIRE(dist(m.q, {1, 0}) < 1e-14);
    REQUIRE(dist(m.p, {0, 1}) < 1e-14);

    s.v = {0, 1};
    s.u = {2, 0};
    m = lc_map(s);
    REQUIRE(dist(m.q, {-1, 0}) < 1e-14);
    REQUIRE(dist(m.p, {0, 1}) < 1e-14);

    auto back = lc_inverse(m, s.v);
    REQUIRE(dist(back.v, s.v) < 1e-12);
    REQUIRE(dist(back.u, s.u) < 1e-12);
}

TEST_CASE("regularized Hamiltonian values and the scaling identity") {
    auto kepler = make_system(CatalogId::Kepler);
    auto gauge = make_symmetric_gauge(kepler);
    RegPhaseState s;
    s.v = {1, 0};
    s.u = {0, 0};
    REQUIRE(lc_hamiltonian(kepler, gauge, -0.5, s) ==
            Catch::Approx(-2.0).margin(1e-12));
    s.v = {0, 0};
    s.u = {2.0 * std::sqrt(2.0), 0};
    REQUIRE(lc_hamiltonian(kepler, gauge, -0.5, s) ==
            Catch::Approx(0.0).margin(1e-12));

    const CatalogId ids[] = {CatalogId::Kepler,        CatalogId::Stark,
                             CatalogId::Zeeman,        CatalogId::DiamagneticKepler,
                             CatalogId::RotatingKepler, CatalogId::Hill,
                             CatalogId::FrozenHill,
                             CatalogId::FrozenHillCentrifugal, CatalogId::Rtbp};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-1.2, 1.2);
    for (auto id : ids) {
        auto sys = make_system(id, id == CatalogId::Rtbp
                                        ? std::map<std::string, double>{{"mu", 0.7}}
                                        : std::map<std::string, double>{});
        auto g = make_symmetric_gauge(sys);
        const double c = -0.4;
        int done = 0;
        while (done < 100) {
            RegPhaseState rs;
            rs.v = {d(rng), d(rng)};
            rs.u = {d(rng), d(rng)};
            if (rs.v.norm() < 0.15) continue;
            const auto phys = lc_map(rs);
            bool nearsing = false;
            for (const auto& sp : singular_points(sys))
                if (dist(phys.q, sp) < 0.2) nearsing = true;
            if (nearsing) continue;
            ++done;
            const double lhs = lc_hamiltonian(sys, g, c, rs);
            const double rhs = 4.0 * rs.v.norm2() * (twisted_H(sys, g, phys) - c);
            INFO(catalog_name(id));
            REQUIRE(std::abs(lhs - rhs) <=
                    1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("regularized flow: periodic oscillator orbit and collision passage") {
    auto kepler = make_system(CatalogId::Kepler);
    auto gauge = make_symmetric_gauge(kepler);
    const double c = -0.5;

    RegPhaseState s0;
    s0.v = {std::sqrt(2.0), 0};
    s0.u = {0, 0};
    // flow of 0.5|u|^2 + 2|v|^2 - 4: harmonic with angular frequency 2
    auto traj = integrate_regularized(kepler, gauge, c, s0, M_PI);
    REQUIRE(traj.max_drift() <= 1e-8);
    const auto& last = traj.samples.back();
    REQUIRE(dist(last.v, s0.v) < 1e-8);
    REQUIRE(dist(last.u, s0.u) < 1e-8);

    // collision orbit: starts at v = 0 and passes through with finite speed
    RegPhaseState coll;
    coll.v = {0, 0};
    coll.u = {2.0 * std::sqrt(2.0), 0};
    auto ct = integrate_regularized(kepler, gauge, c, coll, 0.8);
    REQUIRE(ct.max_drift() <= 1e-8);
    REQUIRE(ct.samples.back().v.norm() > 0.5);

    // off-shell start rejected
    RegPhaseState bad = s0;
    bad.u = {1, 0};
    REQUIRE_THROWS_AS(integrate_regularized(kepler, gauge, c, bad, 1.0),
                      PreconditionError);
}

TEST_CASE("projected regularized orbit matches the physical orbit") {
    auto kepler = make_system(CatalogId::Kepler);
    auto gauge = make_symmetric_gauge(kepler);
    const double c = -0.5;
    RegPhaseState s0;
    s0.v = {1, 0};
    s0.u = {0, 2};   // projects to the circular orbit q=(1,0), p=(0,1)
    auto traj = integrate_regularized(kepler, gauge, c, s0, 2.0);
    for (const auto& s : traj.samples) {
        if (s.v.norm() < 1e-6) continue;
        const auto phys = lc_map(s);
        // circular orbit in physical time: q(t) = (cos t, sin t)
        const Point2 expect{std::cos(s.t), std::sin(s.t)};
        REQUIRE(dist(phys.q, expect) < 1e-5);
    }
}

TEST_CASE("regularized flow agrees with the physical flow in a magnetic field") {
    // The magnetic part of the pulled-back flow is exercised only when B != 0,
    // so compare against the physical integrator for systems with a Coriolis
    // term.  The physical trajectory is evaluated through its dense output at
    // the reconstructed physical times of the regularized samples.
    for (auto id : {CatalogId::RotatingKepler, CatalogId::Rtbp}) {
        auto sys = make_system(id, id == CatalogId::Rtbp
                                        ? std::map<std::string, double>{{"mu", 0.99}}
                                        : std::map<std::string, double>{});
        auto gauge = make_symmetric_gauge(sys);
        const double c = -1.6;
        const Point2 q0{0.45, 0.0};
        const double V0 = potential_V(sys, q0);
        REQUIRE(c > V0);
        PhaseState p0{q0, {0.0, std::sqrt(2.0 * (c - V0))}, 0.0};
        IntegrateOptions io{1e-12, 1e-12};
        io.store_dense = true;
        auto phys = integrate(sys, p0, 3.0, io);
        REQUIRE_FALSE(phys.dense.empty());

        RegPhaseState s0;
        s0.v = {std::sqrt(q0.x), 0.0};
        const double U = reg_potential(sys, c, s0.v);
        REQUIRE(U < 0.0);
        s0.u = detail::reg_A(gauge, s0.v) + Vec2{0.0, std::sqrt(-2.0 * U)};
        IntegrateOptions rio{1e-12, 1e-12};
        rio.h_max = 0.005;
        auto reg = integrate_regularized(sys, gauge, c, s0, 1.0, rio);
        REQUIRE(reg.max_drift() <= 1e-9);

        double worst = 0.0;
        std::size_t di = 0, checked = 0;
        for (const auto& s : reg.samples) {
            if (s.t > 2.5) break;
            while (di + 1 < phys.dense.size() &&
                   phys.dense[di].t0 + phys.dense[di].h < s.t)
                ++di;
            const auto y = phys.dense[di].eval(s.t);
            const std::complex<double> v = to_complex(s.v);
            const auto q = from_complex(v * v);
            worst = std::max(worst, dist(q, {y[0], y[1]}));
            ++checked;
        }
        INFO(catalog_name(id));
        REQUIRE(checked > 50);
        REQUIRE(worst <= 5e-5);
    }
}

TEST_CASE("momentum-sphere chart identities") {
    MoserChart chart;   // r = 1
    auto sp = moser_stereographic(chart, {0, 0});
    REQUIRE(sp[0] == 0.0);
    REQUIRE(sp[2] == Catch::Approx(-1.0));
    sp = moser_stereographic(chart, {1, 0});
    REQUIRE(sp[2] == Catch::Approx(0.0).margin(1e-14));

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        MoserChart ch;
        ch.r = 0.5 + std::abs(d(rng));
        const Vec2 p{d(rng), d(rng)};
        if (p.norm() < 1e-3) continue;
        auto x = moser_stereographic(ch, p);
        REQUIRE(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] ==
                Catch::Approx(ch.r * ch.r).margin(1e-10));
        // transition involution and norm relation
        const Vec2 tp = moser_transition(ch, p);
        REQUIRE(dist(moser_transition(ch, tp), p) < 1e-10);
        REQUIRE(tp.norm() == Catch::Approx(ch.r * ch.r / p.norm()).margin(1e-10));
        // cotangent lift norm identity
        const Vec2 q{d(rng), d(rng)};
        auto [ptil, qtil] = moser_cotangent_lift(ch, p, q);
        REQUIRE(dist(ptil, tp) < 1e-12);
        REQUIRE(qtil.norm() ==
                Catch::Approx(p.norm2() * q.norm() / (ch.r * ch.r)).margin(1e-9));
    }

    REQUIRE(dist(moser_transition(chart, {2, 0}), {0.5, 0}) < 1e-14);
    auto [pt, qt] = moser_cotangent_lift(chart, {1, 0}, {0, 1});
    REQUIRE(dist(pt, {1, 0}) < 1e-14);
    REQUIRE(dist(qt, {0, 1}) < 1e-14);
}

TEST_CASE("cotangent lift is symplectic (finite-difference Jacobian)") {
    MoserChart chart;
    chart.r = 1.3;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        Vec2 p{d(rng), d(rng)}, q{d(rng), d(rng)};
        if (p.norm() < 0.3) continue;
        // coordinates ordered (p1, p2, q1, q2); canonical form dq ^ dp
        auto F = [&](const std::array<double, 4>& z) -> std::array<double, 4> {
            auto [pt, qt] =
                moser_cotangent_lift(chart, {z[0], z[1]}, {z[2], z[3]});
            return {pt.x, pt.y, qt.x, qt.y};
        };
        std::array<double, 4> z0{p.x, p.y, q.x, q.y};
        double J[4][4];
        for (int j = 0; j < 4; ++j) {
            auto zp = z0, zm = z0;
            zp[j] += h;
            zm[j] -= h;
            auto fp = F(zp), fm = F(zm);
            for (int i = 0; i < 4; ++i) J[i][j] = (fp[i] - fm[i]) / (2 * h);
        }
        // Omega in (p1,p2,q1,q2): {p_i, q_i} pairs
        double Om[4][4] = {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        s += J[a][i] * Om[a][b] * J[b][j];
                REQUIRE(std::abs(s - Om[i][j]) < 1e-7);
            }
    }
}

TEST_CASE("stereographic pullback metric factor") {
    MoserChart chart;
    chart.r = 1.2;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        const Vec2 p{d(rng), d(rng)};
        const double expect =
            4.0 * std::pow(chart.r, 4) / std::pow(p.norm2() + chart.r * chart.r, 2);
        for (int j = 0; j < 2; ++j) {
            Vec2 pp = p, pm = p;
            (j == 0 ? pp.x : pp.y) += h;
            (j == 0 ? pm.x : pm.y) -= h;
            auto xp = moser_stereographic(chart, pp);
            auto xm = moser_stereographic(chart, pm);
            double n2 = 0;
            for (int i = 0; i < 3; ++i) {
                const double dxi = (xp[i] - xm[i]) / (2 * h);
                n2 += dxi * dxi;
            }
            REQUIRE(n2 == Catch::Approx(expect).epsilon(1e-5));
        }
    }
}

TEST_CASE("extended Hamiltonian on the momentum sphere") {
    auto kepler = make_system(CatalogId::Kepler);
    auto gauge = make_symmetric_gauge(kepler);
    MoserChart chart;   // r = 1
    // extension value at p = 0
    REQUIRE(moser_K_c(kepler, gauge, chart, -0.5, {0, 0}, {2, 0}) ==
            Catch::Approx(0.0).margin(1e-14));
    REQUIRE(moser_K_c(kepler, gauge, chart, -0.5, {0, 0}, {0, 3}) ==
            Catch::Approx(0.5).margin(1e-13));

    // Kepler zero level: ((|p|^2+r^2)/(2r^2))|q| = 1/r^2 at sampled points
    const double c = -0.5;
    const double r = std::sqrt(-2.0 * c);
    MoserChart ch;
    ch.r = r;
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int i = 0; i < 50; ++i) {
        Vec2 p{d(rng), d(rng)};
        if (p.norm() < 0.05) continue;
        const double qn = 2.0 / (p.norm2() + r * r);
        Vec2 dir{d(rng), d(rng)};
        if (dir.norm() < 1e-3) continue;
        const Vec2 q = normalized(dir) * qn;
        REQUIRE(std::abs(moser_K_c(kepler, gauge, ch, c, p, q)) < 1e-12);
    }

    // zero-level limit |q| -> 2/r^2 as p -> 0
    const Vec2 p_small{1e-3, 0};
    double lo = 0.1, hi = 10.0;   // bisect K = 0 in |q|
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = moser_K_c(kepler, gauge, ch, c, p_small, {mid, 0});
        (val < 0 ? lo : hi) = mid;
    }
    REQUIRE(std::abs(0.5 * (lo + hi) - 2.0 / (r * r)) < 1e-4);
}
