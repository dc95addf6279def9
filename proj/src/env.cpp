#include "ogcb/env.hpp"

#include "ogcb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ogcb::env {
namespace {

constexpr double kCollisionMargin = 1e-6;
constexpr double kDoorHalfWidth = 0.5; // door gap of width 1, centered

float clampf(float v, float lo, float hi) {
    return std::min(std::max(v, lo), hi);
}

// Earliest parameter t in [0,1] where the segment p -> q crosses a wall.
// Walls are axis-aligned so a plane test per wall is enough.
bool first_wall_hit(const EnvSpec& spec, Vec2 p, Vec2 q, double& t_hit) {
    const double px = p.x, py = p.y, qx = q.x, qy = q.y;
    double best = std::numeric_limits<double>::infinity();
    for (const Wall& w : spec.walls) {
        if (w.x1 == w.x2) { // vertical wall
            const double c = w.x1;
            const double d0 = px - c, d1 = qx - c;
            if ((d0 > 0.0 && d1 > 0.0) || (d0 < 0.0 && d1 < 0.0))
                continue;
            const double denom = qx - px;
            if (denom == 0.0)
                continue; // motion parallel and on the wall line; no crossing
            const double t = (c - px) / denom;
            if (t < 0.0 || t > 1.0)
                continue;
            const double y = py + t * (qy - py);
            const double ylo = std::min(w.y1, w.y2), yhi = std::max(w.y1, w.y2);
            if (y >= ylo && y <= yhi && t < best)
                best = t;
        } else { // horizontal wall
            const double c = w.y1;
            const double d0 = py - c, d1 = qy - c;
            if ((d0 > 0.0 && d1 > 0.0) || (d0 < 0.0 && d1 < 0.0))
                continue;
            const double denom = qy - py;
            if (denom == 0.0)
                continue;
            const double t = (c - py) / denom;
            if (t < 0.0 || t > 1.0)
                continue;
            const double x = px + t * (qx - px);
            const double xlo = std::min(w.x1, w.x2), xhi = std::max(w.x1, w.x2);
            if (x >= xlo && x <= xhi && t < best)
                best = t;
        }
    }
    if (!std::isfinite(best))
        return false;
    t_hit = best;
    return true;
}

double point_segment_distance(double px, double py, const Wall& w) {
    const double vx = w.x2 - w.x1, vy = w.y2 - w.y1;
    const double wx = px - w.x1, wy = py - w.y1;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = px - (w.x1 + t * vx), dy = py - (w.y1 + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

Vec2 sample_free_point(const EnvSpec& spec, rng::Engine& eng) {
    for (;;) {
        Vec2 p{rng::uniformf(eng, spec.low, spec.high),
               rng::uniformf(eng, spec.low, spec.high)};
        if (!on_wall(spec, p, 1e-9))
            return p;
    }
}

} // namespace

EnvId env_id_from_string(const std::string& s) {
    if (s == "pointreach" || s == "point_reach")
        return EnvId::point_reach;
    if (s == "pointrooms" || s == "point_rooms")
        return EnvId::point_rooms;
    throw std::invalid_argument("unknown env id: " + s);
}

std::string to_string(EnvId id) {
    return id == EnvId::point_reach ? "pointreach" : "pointrooms";
}

EnvSpec make_spec(EnvId id) {
    EnvSpec spec;
    spec.id = id;
    if (id == EnvId::point_rooms) {
        const double hi = spec.high, lo = spec.low;
        const double door = 2.5; // door centered on each half-axis wall
        spec.walls = {
            // x = 0, upper half, gap around y = +door
            {0.0, 0.0, 0.0, door - kDoorHalfWidth},
            {0.0, door + kDoorHalfWidth, 0.0, hi},
            // x = 0, lower half
            {0.0, lo, 0.0, -door - kDoorHalfWidth},
            {0.0, -door + kDoorHalfWidth, 0.0, 0.0},
            // y = 0, right half
            {0.0, 0.0, door - kDoorHalfWidth, 0.0},
            {door + kDoorHalfWidth, 0.0, hi, 0.0},
            // y = 0, left half
            {lo, 0.0, -door - kDoorHalfWidth, 0.0},
            {-door + kDoorHalfWidth, 0.0, 0.0, 0.0},
        };
    }
    return spec;
}

EnvObservation reset(const EnvSpec& spec, std::uint64_t seed) {
    rng::Engine eng(seed);
    EnvObservation obs;
    obs.state = sample_free_point(spec, eng);
    obs.desired_goal = sample_free_point(spec, eng);
    obs.achieved_goal = phi(spec, obs.state);
    return obs;
}

Vec2 step(const EnvSpec& spec, Vec2 state, Vec2 action) {
    if (!std::isfinite(action.x) || !std::isfinite(action.y))
        throw std::invalid_argument("step: non-finite action");
    const float ax = clampf(action.x, -1.0f, 1.0f);
    const float ay = clampf(action.y, -1.0f, 1.0f);
    Vec2 cand{clampf(state.x + ax, spec.low, spec.high),
              clampf(state.y + ay, spec.low, spec.high)};
    if (spec.walls.empty())
        return cand;

    double t_hit;
    if (!first_wall_hit(spec, state, cand, t_hit))
        return cand;
    const double dx = static_cast<double>(cand.x) - state.x;
    const double dy = static_cast<double>(cand.y) - state.y;
    const double len = std::sqrt(dx * dx + dy * dy);
    double t_stop = t_hit;
    if (len > 0.0)
        t_stop = std::max(0.0, t_hit - kCollisionMargin / len);
    return Vec2{static_cast<float>(state.x + t_stop * dx),
                static_cast<float>(state.y + t_stop * dy)};
}

Vec2 phi(const EnvSpec&, Vec2 state) { return state; }

float sparse_reward(std::span<const float> achieved, std::span<const float> desired,
                    float threshold) {
    if (achieved.size() != desired.size())
        throw std::invalid_argument("sparse_reward: dimension mismatch");
    double d2 = 0.0;
    for (std::size_t i = 0; i < achieved.size(); ++i) {
        const double d = static_cast<double>(achieved[i]) - desired[i];
        d2 += d * d;
    }
    return std::sqrt(d2) <= threshold ? 1.0f : 0.0f;
}

float sparse_reward(Vec2 achieved, Vec2 desired, float threshold) {
    const float a[2] = {achieved.x, achieved.y};
    const float d[2] = {desired.x, desired.y};
    return sparse_reward(std::span<const float>(a, 2), std::span<const float>(d, 2),
                         threshold);
}

float goal_distance(Vec2 a, Vec2 b) {
    const double dx = static_cast<double>(a.x) - b.x;
    const double dy = static_cast<double>(a.y) - b.y;
    return static_cast<float>(std::sqrt(dx * dx + dy * dy));
}

bool on_wall(const EnvSpec& spec, Vec2 p, double tol) {
    for (const Wall& w : spec.walls)
        if (point_segment_distance(p.x, p.y, w) <= tol)
            return true;
    return false;
}

} // namespace ogcb::env
