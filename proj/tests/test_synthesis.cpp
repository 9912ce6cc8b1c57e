// Move-program constructions against the geometric invariant computations.

#include <catch2/catch_amalgamated.hpp>

#include "szplus/invariants.hpp"
#include "szplus/synthesis.hpp"

using namespace szplus;

TEST_CASE("2-satellites: crossing count and invariants") {
    SeedPlacement pl;
    pl.center = {0.03, -0.02};
    pl.radius = 1.0;
    pl.around_origin = true;
    for (int j : {1, 2, 3}) {
        auto st = satellite(standard_curve(j, pl), 2);
        INFO("j=" << j);
        REQUIRE(st.n_double == static_cast<std::size_t>(4 * (j - 1) + 1));
        REQUIRE(st.j_plus == -2 - 8L * (j - 1));
        REQUIRE(st.w0 == 2);
        REQUIRE(st.rotation == 2 * j);
        auto inv = invariants_geometric(st.curve);
        REQUIRE(inv.j_plus == st.j_plus);
        REQUIRE(inv.two_j1 == 2 * (-8L * (j - 1)));
        REQUIRE(inv.j2 == -4L * (j - 1));
        // lift component is the standard curve of index 2j-1
        auto lift = levi_civita_lift_curve(st.curve);
        REQUIRE_FALSE(lift.connected);
        REQUIRE(j_plus_geometric(lift.components[0]) == 2 - 2L * (2 * j - 1));
    }
}

TEST_CASE("forward tangency passages: +2 direct, 0 inverse") {
    std::mt19937 rng(7);
    SeedPlacement pl;
    pl.center = {0.05, 0.01};
    pl.radius = 1.0;
    pl.around_origin = true;
    auto st = satellite(standard_curve(1, pl), 2);   // two parallel laps
    const long j0 = st.j_plus;
    ii_move_forward(st, Tangency::Direct, rng);
    REQUIRE(st.j_plus == j0 + 2);
    REQUIRE(j_plus_geometric(st.curve) == st.j_plus);

    auto st2 = standard_curve(1, pl);   // facing strands across a disk: inverse
    const long j2v = st2.j_plus;
    ii_move_forward(st2, Tangency::Inverse, rng);
    REQUIRE(st2.j_plus == j2v);
    REQUIRE(st2.n_double == 2);
    REQUIRE(j_plus_geometric(st2.curve) == j2v);
}

TEST_CASE("backward tangency passage collapses a bigon") {
    std::mt19937 rng(11);
    SeedPlacement pl;
    pl.center = {0.05, 0.01};
    pl.radius = 1.0;
    pl.around_origin = true;
    auto st = standard_curve(1, pl);
    ii_move_forward(st, Tangency::Inverse, rng);
    REQUIRE(st.n_double == 2);
    ii_move_backward(st);
    REQUIRE(st.n_double == 0);
    REQUIRE(st.j_plus == 0);
    REQUIRE(j_plus_geometric(st.curve) == 0);
}

TEST_CASE("triple-point slide keeps n and J+") {
    std::mt19937 rng(23);
    SeedPlacement pl;
    pl.center = {0.05, 0.01};
    pl.radius = 1.0;
    pl.around_origin = true;
    // build a curve with a triangular face: two fingers across one strand
    OracleResult st = satellite(standard_curve(1, pl), 2);
    ii_move_forward(st, Tangency::Direct, rng);
    bool moved = false;
    for (int tries = 0; tries < 10 && !moved; ++tries) {
        OracleResult backup = st;
        try {
            const long j0 = st.j_plus;
            const std::size_t n0 = st.n_double;
            iii_move(st, tries);
            REQUIRE(st.j_plus == j0);
            REQUIRE(st.n_double == n0);
            REQUIRE(j_plus_geometric(st.curve) == j0);
            moved = true;
        } catch (const PlacementError&) {
            st = backup;
            ii_move_forward(st, Tangency::Inverse, rng);
        }
    }
    REQUIRE(moved);
}

TEST_CASE("connected sum is additive in J+ and origin winding") {
    SeedPlacement pl;
    pl.center = {0.05, 0.01};
    pl.radius = 1.0;
    pl.around_origin = true;
    auto a = standard_curve(2, pl);
    SeedPlacement far;
    far.center = {0.0, 0.0};
    far.radius = 0.8;
    far.around_origin = false;
    auto b = standard_curve(2, far);
    auto sum = connected_sum(a, b);
    REQUIRE(sum.j_plus == -4);
    REQUIRE(sum.w0 == 1);
    REQUIRE(sum.n_double == 2);
    REQUIRE(j_plus_geometric(sum.curve) == -4);

    auto triv = connected_sum(a, standard_curve(1, far));
    REQUIRE(triv.j_plus == a.j_plus);
    REQUIRE(j_plus_geometric(triv.curve) == a.j_plus);
}

TEST_CASE("even-pair constructions hit the stated invariant pairs") {
    struct Target { int j, k, l; long j1_twice, j2; };
    // (j,k,l) -> 2*J1 = 2*(-8(j-1)+2k+2l), J2 = -4(j-1)+2l
    const Target targets[] = {
        {1, 0, 0, 0, 0},
        {2, 1, -1, 2 * (-8L + 2 - 2), -4 - 2},
        {3, 0, 2, 2 * (-16L + 4), -8 + 4},
    };
    for (const auto& t : targets) {
        INFO("j=" << t.j << " k=" << t.k << " l=" << t.l);
        auto st = construct_even_pair(t.j, t.k, t.l);
        auto inv = invariants_geometric(st.curve);
        REQUIRE(inv.j_plus == st.j_plus);
        REQUIRE(inv.two_j1 == t.j1_twice);
        REQUIRE(inv.j2 == t.j2);
        REQUIRE_FALSE(inv.odd_parity);
    }
}

TEST_CASE("random programs: oracle J+ equals geometric J+, parity relation holds") {
    int odd_seen = 0;
    for (unsigned seed = 1; seed <= 30; ++seed) {
        auto st = run_random_program(seed);
        INFO("seed=" << seed << " n=" << st.n_double << " w0=" << st.w0);
        auto inv = invariants_geometric(st.curve);
        REQUIRE(inv.j_plus == st.j_plus);
        REQUIRE(inv.w0 == st.w0);
        if (inv.odd_parity) {
            ++odd_seen;
            REQUIRE(inv.j2 == inv.two_j1 - 1);
        }
    }
    REQUIRE(odd_seen > 3);
}

TEST_CASE("orientation and exterior-loop invariance of the invariants") {
    for (unsigned seed : {3u, 8u, 15u}) {
        auto st = run_random_program(seed);
        auto rev = st.curve;
        std::reverse(rev.vertices.begin(), rev.vertices.end());
        REQUIRE(j_plus_geometric(rev) == st.j_plus);

        OracleResult ext = st;
        try {
            add_exterior_loop(ext);
        } catch (const PlacementError&) {
            continue;
        }
        auto a = invariants_geometric(st.curve);
        auto b = invariants_geometric(ext.curve);
        REQUIRE(a.j_plus == b.j_plus);
        REQUIRE(a.two_j1 == b.two_j1);
        REQUIRE(a.j2 == b.j2);
    }
}
