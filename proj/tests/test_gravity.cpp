#include "grainflow/gravity.hpp"

#include "grainflow/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace grainflow;
using testutil::make_center;

TEST_SUITE("gravity") {

TEST_CASE("pair_force worked examples") {
    // -g*mc*ms/r = -(0.5 * -10 * 50) / 2.5 = +100
    CHECK(pair_force(-10.0, 50.0, 0.5, 2.5) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(pair_force(0.0, 50.0, 0.5, 2.5) == 0.0);
    // two suppliers repel
    CHECK(pair_force(10.0, 50.0, 0.5, 2.5) == doctest::Approx(-100.0).epsilon(1e-12));
}

TEST_CASE("pair_force rejects non-positive cost") {
    CHECK_THROWS_AS(pair_force(-10.0, 50.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(pair_force(-10.0, 50.0, 0.5, -1.0), DomainError);
    CHECK_THROWS_AS(pair_force(-10.0, 50.0, -0.1, 1.0), DomainError);
}

TEST_CASE("sign law: attraction exactly for opposite roles") {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> mass(-500.0, 500.0);
    std::uniform_real_distribution<double> pos(0.01, 100.0);
    for (int i = 0; i < 5000; ++i) {
        double mc = mass(gen), ms = mass(gen);
        if (mc == 0.0 || ms == 0.0) continue;
        const double g = pos(gen), r = pos(gen);
        const double f = pair_force(mc, ms, g, r);
        CHECK((f > 0.0) == ((mc < 0.0) != (ms < 0.0)));
    }
}

TEST_CASE("force decreases strictly with cost and never reaches zero") {
    const double mc = -40.0, ms = 120.0, g = 0.7;
    double previous = std::numeric_limits<double>::infinity();
    for (double r = 0.5; r < 1e9; r *= 3.0) {
        const double f = pair_force(mc, ms, g, r);
        CHECK(f > 0.0);
        CHECK(f < previous);
        previous = f;
    }
}

TEST_CASE("force is linear in each mass and in urgency") {
    const double base = pair_force(-10.0, 50.0, 0.5, 2.5);
    CHECK(pair_force(-20.0, 50.0, 0.5, 2.5) == doctest::Approx(2.0 * base));
    CHECK(pair_force(-10.0, 150.0, 0.5, 2.5) == doctest::Approx(3.0 * base));
    CHECK(pair_force(-10.0, 50.0, 1.5, 2.5) == doctest::Approx(3.0 * base));
}

TEST_CASE("unit_cost adds price, handling and transport") {
    auto supplier = make_center("S", 0, 0, 0);
    auto consumer = make_center("C", 0, 0, 0);
    supplier.geo_position = {0.0, 0.0};
    consumer.geo_position = {300.0, 400.0}; // distance 500
    CostParams params;
    params.base_price["wheat"] = 10.0;
    params.transport_rate = 0.02;
    CHECK(unit_cost(supplier, consumer, "wheat", params) == doctest::Approx(20.0));

    consumer.geo_position = {0.0, 0.0};
    CHECK(unit_cost(supplier, consumer, "wheat", params) == doctest::Approx(10.0));

    CHECK_THROWS_AS(unit_cost(supplier, consumer, "rice", params), ConfigError);
}

TEST_CASE("zero-cost configurations are rejected at the force") {
    auto supplier = make_center("S", 0, 0, 0);
    auto consumer = make_center("C", 0, 0, 0);
    CostParams params;
    params.base_price["wheat"] = 0.0;
    const Money r = unit_cost(supplier, consumer, "wheat", params);
    CHECK(r == 0.0);
    CHECK_THROWS_AS(pair_force(-10.0, 50.0, 0.5, r), DomainError);
}

TEST_CASE("urgency grows linearly and clamps at g_max") {
    UrgencyParams params{0.05, 1.0, 0.0, 1.0};
    UrgencyState u{0.4, 0.4, 0};
    u = urgency_update(u, params, 4);
    CHECK(u.current == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(u.waiting_time == 4);

    UrgencyParams frozen{0.0, 1.0, 0.0, 1.0};
    UrgencyState v{0.3, 0.3, 0};
    v = urgency_update(v, frozen, 1000);
    CHECK(v.current == 0.3);

    UrgencyState w{0.9, 0.9, 0};
    w = urgency_update(w, params, 10);
    CHECK(w.current == 1.0);
}

TEST_CASE("urgency stepping is independent of call granularity") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        UrgencyParams params{unit(gen) * 0.2, 1.0 + unit(gen), 0.0, 1.0};
        const UrgencyState start{unit(gen), 0.0, 0};
        const Tick a = static_cast<Tick>(gen() % 50);
        const Tick b = static_cast<Tick>(gen() % 50);
        const auto split = urgency_update(urgency_update(start, params, a), params, b);
        const auto whole = urgency_update(start, params, a + b);
        CHECK(split.current == whole.current); // bit-exact
        CHECK(split.waiting_time == whole.waiting_time);
    }
}

TEST_CASE("urgency is monotone in waiting time") {
    UrgencyParams params{0.03, 1.0, 0.0, 1.0};
    UrgencyState u{0.1, 0.1, 0};
    double last = u.current;
    for (int i = 0; i < 100; ++i) {
        u = urgency_update(u, params, 1);
        CHECK(u.current >= last);
        last = u.current;
    }
}

TEST_CASE("virtual_radius sqrt scaling") {
    CHECK(virtual_radius(0, 1.0, 100) == 0.0);
    CHECK(virtual_radius(100, 1.0, 100) == doctest::Approx(1.0));
    CHECK(virtual_radius(400, 1.0, 100) == doctest::Approx(2.0));
}

TEST_CASE("virtual_step worked examples") {
    const Vec2 moved = virtual_step({0.0, 0.0}, {10.0, 0.0}, 2.0, 0.5);
    CHECK(moved.x == doctest::Approx(5.0));
    CHECK(moved.y == doctest::Approx(0.0));

    // already inside the stand-off: stays put
    const Vec2 held = virtual_step({9.0, 0.0}, {10.0, 0.0}, 2.0, 1.0);
    CHECK(held.x == 9.0);
    CHECK(held.y == 0.0);

    // exactly at the stand-off: fixed point
    const Vec2 fixed = virtual_step({8.0, 0.0}, {10.0, 0.0}, 2.0, 0.5);
    CHECK(fixed.x == 8.0);
}

TEST_CASE("virtual_step clamps at the stand-off instead of overshooting") {
    const Vec2 moved = virtual_step({0.0, 0.0}, {10.0, 0.0}, 2.0, 1.0);
    CHECK(distance(moved, {10.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("virtual_step contracts toward the target") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 pos{coord(gen), coord(gen)};
        const Vec2 target{coord(gen), coord(gen)};
        const double sep = unit(gen) * 5.0;
        const double beta = 0.05 + unit(gen) * 0.95;
        const Vec2 moved = virtual_step(pos, target, sep, beta);
        CHECK(distance(moved, target) <= distance(pos, target) + 1e-9);
    }
}

TEST_CASE("repeated steps converge to the stand-off distance") {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        Vec2 pos{coord(gen), coord(gen)};
        const Vec2 target{coord(gen), coord(gen)};
        const double sep = 0.05 + unit(gen) * 3.0;
        const double beta = 0.1 + unit(gen) * 0.9;
        if (distance(pos, target) <= sep) continue;
        int steps = 0;
        for (; steps < 200; ++steps) {
            pos = virtual_step(pos, target, sep, beta);
            if (std::abs(distance(pos, target) - sep) <= 1e-9) break;
        }
        CHECK(steps < 200);
    }
}

} // TEST_SUITE
