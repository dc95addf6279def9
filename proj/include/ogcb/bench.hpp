// Training-run driver shared by the bench subcommand and the acceptance
// suite: named algorithm variants, single runs, and a small process-local
// worker pool (each run stays single-threaded and deterministic).

#pragma once

#include "ogcb/agent.hpp"
#include "ogcb/data.hpp"
#include "ogcb/env.hpp"

#include <string>
#include <vector>

namespace ogcb::bench {

// wgcsl, gcsl, goal_bc, goal_marwil plus the single-weight variants
// drw / geaw / baw.
std::vector<std::string> variant_names();
agent::AgentConfig variant_config(const std::string& name);

struct RunRequest {
    std::string label;
    const env::EnvSpec* spec = nullptr;
    const data::OfflineDataset* dataset = nullptr;
    agent::AgentConfig cfg;
    agent::TrainOptions opts;
};

struct RunOutcome {
    std::string label;
    std::uint64_t seed = 0;
    double final_return = 0.0;
    double wall_seconds = 0.0;
    std::vector<agent::MetricRow> log;
};

RunOutcome run_one(const RunRequest& req);

// Runs requests on `jobs` worker threads; outcome order matches the input.
std::vector<RunOutcome> run_parallel(const std::vector<RunRequest>& reqs,
                                     int jobs);

double mean(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);

} // namespace ogcb::bench
