// Goal-conditioned point environments. PointReach is free motion in a square;
// PointRooms adds four rooms separated by axis walls with door gaps. Reward is
// the sparse indicator of reaching an epsilon ball around the goal, and the
// state-to-goal mapping is the identity.
//
// Everything here is a pure function over value types.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ogcb::env {

enum class EnvId { point_reach, point_rooms };

EnvId env_id_from_string(const std::string& s);
std::string to_string(EnvId id);

struct Vec2 {
    float x = 0.0f;
    float y = 0.0f;
};

// Axis-aligned wall segment (zero thickness).
struct Wall {
    double x1, y1, x2, y2;
};

struct EnvSpec {
    EnvId id = EnvId::point_reach;
    int obs_dim = 2;
    int goal_dim = 2;
    int act_dim = 2;
    float low = -5.0f;
    float high = 5.0f;
    float threshold = 1.0f;
    int horizon = 50;
    std::vector<Wall> walls; // empty exactly for point_reach
};

EnvSpec make_spec(EnvId id);

struct EnvObservation {
    Vec2 state;
    Vec2 desired_goal;
    Vec2 achieved_goal;
};

// Uniform state and goal over the bounds; rooms variant rejection-samples
// points lying on a wall. Identical seeds give identical observations.
EnvObservation reset(const EnvSpec& spec, std::uint64_t seed);

// Clips the action to [-1,1]^2, adds it, clips to bounds, then stops the
// motion at the first wall crossing (backed off a small margin).
// Throws std::invalid_argument on non-finite actions.
Vec2 step(const EnvSpec& spec, Vec2 state, Vec2 action);

Vec2 phi(const EnvSpec& spec, Vec2 state);

// 1 iff the Euclidean distance is within the threshold.
// Throws std::invalid_argument on dimension mismatch.
float sparse_reward(std::span<const float> achieved, std::span<const float> desired,
                    float threshold);
float sparse_reward(Vec2 achieved, Vec2 desired, float threshold);

float goal_distance(Vec2 a, Vec2 b);

// True when p lies on one of the spec's wall segments (within tol).
bool on_wall(const EnvSpec& spec, Vec2 p, double tol = 1e-9);

} // namespace ogcb::env
