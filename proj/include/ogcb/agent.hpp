// Offline goal-conditioned learners over the relabeled data: TD critic,
// advantage estimation, the compound supervised-regression weight
// (discount-by-relabel-gap x clipped exponential advantage x best-advantage
// gate), and the baseline variants that drop relabeling, weighting or the
// critic entirely.

#pragma once

#include "ogcb/data.hpp"
#include "ogcb/env.hpp"
#include "ogcb/nn.hpp"
#include "ogcb/relabel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ogcb::agent {

enum class Algo { wgcsl, gcsl, goal_bc, goal_marwil };
enum class RelabelStrategy { future, prop2 };

Algo algo_from_string(const std::string& s);
std::string to_string(Algo a);
RelabelStrategy relabel_strategy_from_string(const std::string& s);
std::string to_string(RelabelStrategy s);

struct WeightConfig {
    double drw_gamma = 0.98;      // 1.0 disables the discount part
    double clip_bound = 10.0;     // M
    double eps_min = 0.05;
    double baw_percentile_final = 80.0;
    double baw_increment = 0.15;  // percentile points per training step
    std::int64_t queue_capacity = 50000;
    bool use_drw = true;
    bool use_geaw = true;
    bool use_baw = true;
};

// Bounded FIFO of recent advantage values, strict oldest-first eviction.
class AdvantageQueue {
public:
    AdvantageQueue() = default;
    explicit AdvantageQueue(std::int64_t capacity);

    void push(float v);
    std::int64_t size() const { return count_; }
    std::int64_t capacity() const { return cap_; }
    // Copies contents oldest to newest.
    void copy_to(std::vector<float>& out) const;

private:
    std::vector<float> buf_;
    std::int64_t cap_ = 0;
    std::int64_t head_ = 0; // next write slot
    std::int64_t count_ = 0;
};

// N-th percentile with linear interpolation between order statistics.
// Reorders the given values.
double percentile_linear(std::vector<float>& values, double pct);

// Threshold for the best-advantage gate: the min(final, increment*step)-th
// percentile of the queue. Empty queue returns -infinity (everything passes).
double baw_threshold(const AdvantageQueue& queue, std::int64_t train_step,
                     const WeightConfig& cfg);
double baw_threshold(const AdvantageQueue& queue, std::int64_t train_step,
                     const WeightConfig& cfg, std::vector<float>& scratch);

// w = [drw_gamma^delta] * [clip(exp(A), 0, M)] * [A > threshold ? 1 : eps_min],
// each factor only when its flag is on.
double compute_weight(std::int32_t delta, double advantage, double threshold,
                      const WeightConfig& cfg);

struct AgentConfig {
    Algo algo = Algo::wgcsl;
    WeightConfig weights;
    RelabelStrategy relabel_strategy = RelabelStrategy::future;
    double rl_gamma = 0.98;
    double learning_rate = 5e-4;
    double polyak = 0.9;
    // Both losses share the relabeled minibatch; the objectives are defined
    // over relabeled goals, so the default keeps none of the originals.
    double p_relabel = 1.0;
    int batch_size = 128;
    int hidden_width = 256;
    int hidden_layers = 3;

    bool needs_critic() const {
        return algo == Algo::goal_marwil ||
               (algo == Algo::wgcsl && (weights.use_geaw || weights.use_baw));
    }
    bool relabels() const { return algo == Algo::wgcsl || algo == Algo::gcsl; }
};

struct AgentState {
    AgentConfig cfg;
    int obs_dim = 0;
    int goal_dim = 0;
    int act_dim = 0;
    nn::MlpParams policy;
    nn::MlpParams critic;
    nn::MlpParams target_policy;
    nn::MlpParams target_critic;
    nn::AdamState policy_opt;
    nn::AdamState critic_opt;
    nn::Normalizer norm; // over [obs, goal] rows
    AdvantageQueue queue;
    std::int64_t train_step = 0;

    bool has_critic() const { return !critic.layers.empty(); }
};

AgentState make_agent(const AgentConfig& cfg, int obs_dim, int goal_dim,
                      int act_dim, std::uint64_t seed);

// Reusable buffers for the update path. compute_advantage leaves the policy
// forward cache for the batch's (state, goal) rows; actor_update reuses it
// when still fresh.
struct Workspace {
    std::vector<float> raw_rows;
    std::vector<float> norm_cur;
    std::vector<float> norm_next;
    std::vector<float> critic_in;
    std::vector<float> td_targets;
    std::vector<float> grad_out;
    std::vector<float> stacked_norm;
    std::vector<float> queue_scratch;
    nn::MlpCache policy_cache;   // (state, goal) rows, reused by actor update
    nn::MlpCache aux_cache;
    nn::MlpCache critic_cache;
    nn::MlpGradsT<float> grads;
    nn::MlpScratchT<float> scratch;
    bool policy_cache_fresh = false;
};

// One critic TD step on the batch (target nets produce the bootstrapped value,
// targets clipped to [0, 1/(1-gamma)]), followed by Polyak updates of both
// target networks. Returns the TD loss. Throws when the algo has no critic.
double critic_td_update(AgentState& agent, const relabel::TransitionBatch& batch,
                        Workspace& ws);

// A = r + gamma*V(s', g) - V(s, g) with V(s, g) = Q(s, pi(s, g), g) on the
// online networks.
void compute_advantage(AgentState& agent, const relabel::TransitionBatch& batch,
                       Workspace& ws, std::vector<float>& adv_out);

// Weighted regression gradients for the policy: mean of w * ||pi(s,g) - a||^2.
double compute_actor_gradients(AgentState& agent,
                               const relabel::TransitionBatch& batch,
                               const std::vector<float>& weights, Workspace& ws,
                               nn::MlpGradsT<float>& grads);

// Applies one Adam step on the actor loss above; returns the loss.
double actor_update(AgentState& agent, const relabel::TransitionBatch& batch,
                    const std::vector<float>& weights, Workspace& ws);

struct MetricRow {
    std::int64_t step = 0;
    double avg_return = 0.0;
    double avg_discounted_return = 0.0;
    double final_distance = 0.0;
    double success_rate = 0.0;
    double td_loss = 0.0;
    double actor_loss = 0.0;
    double mean_weight = 0.0;
};

struct TrainOptions {
    std::int64_t total_steps = 50000;
    std::int64_t eval_every = 5000;
    int eval_episodes = 100;
    std::uint64_t seed = 1;
};

struct TrainResult {
    AgentState agent;
    std::vector<MetricRow> log;
};

// Full offline training loop; per step: sample/relabel, normalizer update,
// critic TD + advantage + queue + threshold (when a critic exists), weight
// computation, weighted actor step. Metrics are logged every eval_every steps
// with losses and weights averaged over the interval.
TrainResult train(const AgentConfig& cfg, const env::EnvSpec& spec,
                  const data::OfflineDataset& ds, const TrainOptions& opts);

void save_agent(const std::string& path, const AgentState& agent,
                env::EnvId env_id);
struct LoadedAgent {
    AgentState agent;
    env::EnvId env_id;
};
LoadedAgent load_agent(const std::string& path);

} // namespace ogcb::agent
