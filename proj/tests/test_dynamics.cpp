#include "covsim/dynamics.hpp"

#include <doctest.h>

#include <cmath>

using namespace covsim;

TEST_CASE("make_drone parks at the cell center") {
    Arena a;
    for (int i = 0; i < 9; ++i) {
        DroneState d = make_drone(i, a);
        CHECK(d.id == i);
        CHECK(d.pos == d.home);
        CHECK(d.home == cell_center(d.assigned_cell, a));
        CHECK(d.mode == MotionMode::Walking);
    }
}

TEST_CASE("step_walk moves exactly one step length") {
    Arena a;
    WalkParams p{0.5, 0.0};
    DroneState d = make_drone(4, a);
    SUBCASE("fixed headings") {
        DroneState e = step_walk(d, p, 0.0);
        CHECK(e.pos.x == doctest::Approx(d.pos.x + 0.5));
        CHECK(e.pos.y == doctest::Approx(d.pos.y));
        DroneState n = step_walk(d, p, 1.5707963267948966);
        CHECK(n.pos.y == doctest::Approx(d.pos.y + 0.5));
    }
    SUBCASE("random headings keep the step length") {
        RandomStream rng(11);
        for (int i = 0; i < 1000; ++i) {
            DroneState e = step_walk(d, p, rng);
            CHECK(distance(e.pos, d.pos) == doctest::Approx(0.5).epsilon(1e-12));
            d = e;
        }
    }
    SUBCASE("walking is unconstrained by boundaries") {
        d.pos = {0.1, 0.1};
        DroneState e = step_walk(d, p, 3.9269908169872414); // toward (-,-)
        CHECK(e.pos.x < 0.0);
        CHECK(e.pos.y < 0.0);
    }
}

TEST_CASE("step_walk requires Walking") {
    Arena a;
    DroneState d = command_return(make_drone(0, a));
    WalkParams p{0.5, 0.0};
    CHECK_THROWS_AS(step_walk(d, p, 0.0), std::logic_error);
}

TEST_CASE("command_return flips mode and nothing else") {
    Arena a;
    DroneState d = make_drone(2, a);
    d.pos = {55.0, 3.0};
    DroneState r = command_return(d);
    CHECK(r.mode == MotionMode::Returning);
    CHECK(r.pos == d.pos);
    // Commanding again is a no-op.
    DroneState r2 = command_return(r);
    CHECK(r2.mode == MotionMode::Returning);
    CHECK(r2.pos == r.pos);
}

TEST_CASE("step_return reaches home in ceil(dist/step) slots") {
    Arena a;
    WalkParams p{0.5, 0.0};
    SUBCASE("exact multiple") {
        DroneState d = make_drone(0, a);
        d.pos = {10.0, 13.0}; // 3.0 above home (10,10)
        d = command_return(d);
        int steps = 0;
        while (d.mode == MotionMode::Returning) {
            d = step_return(d, p);
            ++steps;
            REQUIRE(steps < 100);
        }
        CHECK(steps == 6);
        CHECK(d.pos == d.home);
    }
    SUBCASE("fractional remainder") {
        DroneState d = make_drone(0, a);
        d.pos = {10.0, 10.0 + 1.3};
        d = command_return(d);
        int steps = 0;
        while (d.mode == MotionMode::Returning) {
            d = step_return(d, p);
            ++steps;
        }
        CHECK(steps == 3); // 0.5 + 0.5 + 0.3
        CHECK(d.pos == d.home);
    }
    SUBCASE("already home") {
        DroneState d = command_return(make_drone(0, a));
        d = step_return(d, p);
        CHECK(d.mode == MotionMode::Walking);
        CHECK(d.pos == d.home);
    }
}

TEST_CASE("step_return distance decreases monotonically") {
    Arena a;
    WalkParams p{0.7, 0.0};
    DroneState d = make_drone(8, a);
    d.pos = {41.3, 58.9};
    d = command_return(d);
    double prev = distance(d.pos, d.home);
    while (d.mode == MotionMode::Returning) {
        d = step_return(d, p);
        double cur = distance(d.pos, d.home);
        CHECK(cur < prev + 1e-12);
        prev = cur;
    }
    CHECK(d.pos == d.home);
}

TEST_CASE("arrival epsilon snaps early") {
    Arena a;
    WalkParams p{0.5, 0.2};
    DroneState d = make_drone(0, a);
    d.pos = {10.0, 10.65};
    d = command_return(d);
    d = step_return(d, p); // 0.65 -> 0.15 <= 0.2: snap
    CHECK(d.mode == MotionMode::Walking);
    CHECK(d.pos == d.home);
}

TEST_CASE("step_return requires Returning") {
    Arena a;
    DroneState d = make_drone(0, a);
    WalkParams p{0.5, 0.0};
    CHECK_THROWS_AS(step_return(d, p), std::logic_error);
}
