// Deterministic policy evaluation (mean policy, no exploration noise) and the
// metrics CSV format. Episodes run in lockstep so the policy forward is one
// batched call per environment step.

#pragma once

#include "ogcb/agent.hpp"
#include "ogcb/env.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ogcb::eval {

struct EvalReport {
    double avg_return = 0.0;
    double avg_discounted_return = 0.0;
    double final_distance = 0.0;
    double success_rate = 0.0;
    int n_episodes = 0;
    std::uint64_t seed = 0;
};

// Batch policy: given n raw (state, goal) rows, writes n action rows.
using PolicyFn = std::function<void(const float* states, const float* goals,
                                    int n, float* actions)>;

EvalReport run_episodes(const env::EnvSpec& spec, int n_episodes,
                        std::uint64_t seed, double discount,
                        const PolicyFn& policy);

// Rolls the agent's deterministic mean policy; never mutates the agent.
EvalReport evaluate(const agent::AgentState& agent, const env::EnvSpec& spec,
                    int n_episodes, std::uint64_t seed);

// CSV with the fixed header step,avg_return,avg_discounted_return,
// final_distance,success_rate,td_loss,actor_loss,mean_weight and shortest
// round-trip float formatting.
void emit_metrics(const std::vector<agent::MetricRow>& log,
                  const std::string& path);
std::vector<agent::MetricRow> parse_metrics(const std::string& path);

} // namespace ogcb::eval
