// Offline dataset container, trajectory collection, serialization and dataset
// statistics. Trajectories are stored columnar with one extra terminal state
// so the successor state exists for every transition. Rewards are never
// stored; callers recompute them from goals.

#pragma once

#include "ogcb/env.hpp"
#include "ogcb/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ogcb::data {

enum class Collector { random, expert };

Collector collector_from_string(const std::string& s);
std::string to_string(Collector c);

struct DatasetManifest {
    env::EnvId env_id = env::EnvId::point_reach;
    int obs_dim = 2;
    int goal_dim = 2;
    int act_dim = 2;
    int horizon = 50;
    std::int64_t n_traj = 0;
    Collector collector = Collector::random;
    float noise_sigma = 0.0f;
    std::uint64_t seed = 0;
    int format_version = 1;
};

struct OfflineDataset {
    DatasetManifest manifest;
    // Shapes: states/achieved_goals [n_traj][horizon+1][dim],
    // actions [n_traj][horizon][dim], desired_goals [n_traj][dim].
    std::vector<float> states;
    std::vector<float> actions;
    std::vector<float> achieved_goals;
    std::vector<float> desired_goals;

    // Per-transition goals produced by the accepting relabel strategy
    // (relabel::relabel_prop2); empty otherwise. Not serialized.
    std::vector<float> transition_goals;  // [n_traj][horizon][goal_dim]
    std::vector<std::int32_t> transition_deltas; // [n_traj][horizon]

    std::int64_t n_transitions() const {
        return manifest.n_traj * manifest.horizon;
    }
    bool has_transition_goals() const { return !transition_goals.empty(); }

    const float* state(std::int64_t traj, int t) const;
    const float* action(std::int64_t traj, int t) const;
    const float* achieved(std::int64_t traj, int t) const;
    const float* desired(std::int64_t traj) const;
};

// Rolls out n_traj fixed-horizon episodes under the named behavior policy.
// The random collector draws actions uniform in [-1,1]^act_dim; the expert
// collector is the scripted greedy displacement policy plus Gaussian noise.
OfflineDataset collect(const env::EnvSpec& spec, Collector collector,
                       std::int64_t n_traj, std::uint64_t seed,
                       float noise_sigma = 0.2f);

// Mean action clip(goal - phi(state), [-1,1]) plus N(0, sigma^2) noise,
// clipped back to the action bounds.
env::Vec2 expert_action(env::Vec2 state, env::Vec2 goal, float noise_sigma,
                        rng::Engine& eng);

void save(const OfflineDataset& ds, const std::string& path);
OfflineDataset load(const std::string& path);

// Mean episode return, recomputed from achieved goals against the original
// desired goal. Undiscounted unless a discount is given.
double dataset_return(const OfflineDataset& ds,
                      std::optional<double> discount = std::nullopt);

} // namespace ogcb::data
