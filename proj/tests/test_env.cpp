#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ogcb/env.hpp"
#include "ogcb/rng.hpp"

#include <cmath>
#include <cstring>

using namespace ogcb;

namespace {

// Independent orientation-based segment intersection used as the oracle for
// wall collision checks.
int orientation(double ax, double ay, double bx, double by, double cx,
                double cy) {
    const double v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if (v > 1e-15)
        return 1;
    if (v < -1e-15)
        return -1;
    return 0;
}

bool segments_properly_intersect(double p1x, double p1y, double p2x, double p2y,
                                 double q1x, double q1y, double q2x, double q2y) {
    const int o1 = orientation(p1x, p1y, p2x, p2y, q1x, q1y);
    const int o2 = orientation(p1x, p1y, p2x, p2y, q2x, q2y);
    const int o3 = orientation(q1x, q1y, q2x, q2y, p1x, p1y);
    const int o4 = orientation(q1x, q1y, q2x, q2y, p2x, p2y);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool motion_crosses_any_wall(const env::EnvSpec& spec, env::Vec2 a,
                             env::Vec2 b) {
    for (const auto& w : spec.walls)
        if (segments_properly_intersect(a.x, a.y, b.x, b.y, w.x1, w.y1, w.x2,
                                        w.y2))
            return true;
    return false;
}

} // namespace

TEST_CASE("reset stays in bounds and is deterministic") {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_reach);
    const env::EnvObservation a = env::reset(spec, 7);
    const env::EnvObservation b = env::reset(spec, 7);
    CHECK(a.state.x >= spec.low);
    CHECK(a.state.x <= spec.high);
    CHECK(a.state.y >= spec.low);
    CHECK(a.state.y <= spec.high);
    CHECK(a.desired_goal.x >= spec.low);
    CHECK(a.desired_goal.x <= spec.high);
    CHECK(std::memcmp(&a, &b, sizeof(a)) == 0);
    CHECK(a.achieved_goal.x == a.state.x);
    CHECK(a.achieved_goal.y == a.state.y);
}

TEST_CASE("rooms reset never lands on a wall") {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_rooms);
    REQUIRE(spec.walls.size() == 8);
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const env::EnvObservation obs = env::reset(spec, seed);
        CHECK_FALSE(env::on_wall(spec, obs.state, 1e-9));
        CHECK_FALSE(env::on_wall(spec, obs.desired_goal, 1e-9));
    }
}

TEST_CASE("step applies clipped displacements") {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_reach);
    const env::Vec2 a = env::step(spec, {0.0f, 0.0f}, {1.0f, 1.0f});
    CHECK(a.x == 1.0f);
    CHECK(a.y == 1.0f);
    const env::Vec2 b = env::step(spec, {4.8f, 0.0f}, {1.0f, 0.0f});
    CHECK(b.x == 5.0f);
    CHECK(b.y == 0.0f);
    const env::Vec2 c = env::step(spec, {0.0f, 0.0f}, {3.0f, -7.0f});
    CHECK(c.x == 1.0f);
    CHECK(c.y == -1.0f);
    CHECK_THROWS_AS(env::step(spec, {0.0f, 0.0f},
                              {std::numeric_limits<float>::quiet_NaN(), 0.0f}),
                    std::invalid_argument);
}

TEST_CASE("step is deterministic and in bounds over random inputs") {
    rng::Engine eng(99);
    for (const auto id : {env::EnvId::point_reach, env::EnvId::point_rooms}) {
        const env::EnvSpec spec = env::make_spec(id);
        for (int i = 0; i < 50000; ++i) {
            env::Vec2 s{rng::uniformf(eng, spec.low, spec.high),
                        rng::uniformf(eng, spec.low, spec.high)};
            if (id == env::EnvId::point_rooms && env::on_wall(spec, s, 1e-9))
                continue;
            const env::Vec2 act{rng::uniformf(eng, -1.5f, 1.5f),
                                rng::uniformf(eng, -1.5f, 1.5f)};
            const env::Vec2 out = env::step(spec, s, act);
            const env::Vec2 out2 = env::step(spec, s, act);
            CHECK(out.x == out2.x);
            CHECK(out.y == out2.y);
            CHECK(out.x >= spec.low);
            CHECK(out.x <= spec.high);
            CHECK(out.y >= spec.low);
            CHECK(out.y <= spec.high);
        }
    }
}

TEST_CASE("rooms motion never crosses a wall") {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_rooms);
    rng::Engine eng(1234);
    int crossings_attempted = 0;
    for (int i = 0; i < 100000; ++i) {
        env::Vec2 s{rng::uniformf(eng, spec.low, spec.high),
                    rng::uniformf(eng, spec.low, spec.high)};
        if (env::on_wall(spec, s, 1e-9))
            continue;
        const env::Vec2 act{rng::uniformf(eng, -1.0f, 1.0f),
                            rng::uniformf(eng, -1.0f, 1.0f)};
        const env::Vec2 out = env::step(spec, s, act);
        // The oracle checks the realized motion.
        CHECK_FALSE(motion_crosses_any_wall(spec, s, out));
        // Count cases where the unclipped candidate would have crossed.
        const env::Vec2 cand{std::clamp(s.x + act.x, spec.low, spec.high),
                             std::clamp(s.y + act.y, spec.low, spec.high)};
        if (motion_crosses_any_wall(spec, s, cand)) {
            ++crossings_attempted;
            // Stopped point stays on the start side; a tiny further step back
            // toward the start must not cross either.
            CHECK_FALSE(motion_crosses_any_wall(spec, s, out));
        }
    }
    // The random sweep actually exercised collisions.
    CHECK(crossings_attempted > 1000);
}

TEST_CASE("phi is the identity for point tasks") {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_reach);
    const env::Vec2 a = env::phi(spec, {1.5f, -2.0f});
    CHECK(a.x == 1.5f);
    CHECK(a.y == -2.0f);
    const env::Vec2 b = env::phi(spec, {0.0f, 0.0f});
    CHECK(b.x == 0.0f);
    CHECK(b.y == 0.0f);
    // Consistency with the rollout convention.
    const env::Vec2 next = env::step(spec, {0.25f, 0.5f}, {0.5f, -0.25f});
    const env::Vec2 ach = env::phi(spec, next);
    CHECK(ach.x == next.x);
    CHECK(ach.y == next.y);
}

TEST_CASE("sparse reward thresholds on euclidean distance") {
    CHECK(env::sparse_reward({0.0f, 0.0f}, {0.5f, 0.0f}, 1.0f) == 1.0f);
    CHECK(env::sparse_reward({0.0f, 0.0f}, {2.0f, 0.0f}, 1.0f) == 0.0f);
    CHECK(env::sparse_reward({0.0f, 0.0f}, {1.0f, 0.0f}, 1.0f) == 1.0f);
    const float a[3] = {0, 0, 0};
    const float b[2] = {0, 0};
    CHECK_THROWS_AS(env::sparse_reward(std::span<const float>(a, 3),
                                       std::span<const float>(b, 2), 1.0f),
                    std::invalid_argument);
}

TEST_CASE("sparse reward symmetry and translation invariance") {
    rng::Engine eng(5);
    for (int i = 0; i < 2000; ++i) {
        const env::Vec2 a{rng::uniformf(eng, -5, 5), rng::uniformf(eng, -5, 5)};
        const env::Vec2 b{rng::uniformf(eng, -5, 5), rng::uniformf(eng, -5, 5)};
        const env::Vec2 shift{rng::uniformf(eng, -3, 3),
                              rng::uniformf(eng, -3, 3)};
        const float r1 = env::sparse_reward(a, b, 1.0f);
        CHECK(r1 == env::sparse_reward(b, a, 1.0f));
        const env::Vec2 a2{a.x + shift.x, a.y + shift.y};
        const env::Vec2 b2{b.x + shift.x, b.y + shift.y};
        // Translation may flip hairline boundary cases through float rounding;
        // compare distances away from the threshold.
        if (std::abs(env::goal_distance(a, b) - 1.0f) > 1e-3f)
            CHECK(r1 == env::sparse_reward(a2, b2, 1.0f));
    }
}

TEST_CASE("point rooms walls have centered door gaps") {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_rooms);
    // A motion through a door passes; the same motion off the door stops.
    const env::Vec2 through =
        env::step(spec, {-0.4f, 2.5f}, {0.8f, 0.0f}); // door at y=2.5
    CHECK(through.x == doctest::Approx(0.4f));
    const env::Vec2 blocked = env::step(spec, {-0.4f, 1.0f}, {0.8f, 0.0f});
    CHECK(blocked.x < 0.0f); // stopped before the wall at x=0
}
