#include "ogcb/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ogcb::bench {

std::vector<std::string> variant_names() {
    return {"wgcsl", "gcsl", "goal_bc", "goal_marwil", "drw", "geaw", "baw"};
}

agent::AgentConfig variant_config(const std::string& name) {
    agent::AgentConfig cfg;
    if (name == "wgcsl") {
        cfg.algo = agent::Algo::wgcsl;
    } else if (name == "gcsl") {
        cfg.algo = agent::Algo::gcsl;
    } else if (name == "goal_bc") {
        cfg.algo = agent::Algo::goal_bc;
    } else if (name == "goal_marwil") {
        cfg.algo = agent::Algo::goal_marwil;
    } else if (name == "drw" || name == "geaw" || name == "baw") {
        cfg.algo = agent::Algo::wgcsl;
        cfg.weights.use_drw = name == "drw";
        cfg.weights.use_geaw = name == "geaw";
        cfg.weights.use_baw = name == "baw";
    } else {
        throw std::invalid_argument("unknown variant: " + name);
    }
    return cfg;
}

RunOutcome run_one(const RunRequest& req) {
    const auto t0 = std::chrono::steady_clock::now();
    agent::TrainResult result =
        agent::train(req.cfg, *req.spec, *req.dataset, req.opts);
    const auto t1 = std::chrono::steady_clock::now();
    RunOutcome out;
    out.label = req.label;
    out.seed = req.opts.seed;
    out.final_return = result.log.empty() ? 0.0 : result.log.back().avg_return;
    out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.log = std::move(result.log);
    return out;
}

std::vector<RunOutcome> run_parallel(const std::vector<RunRequest>& reqs,
                                     int jobs) {
    std::vector<RunOutcome> outcomes(reqs.size());
    if (jobs < 1)
        jobs = 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= reqs.size())
                return;
            outcomes[i] = run_one(reqs[i]);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(reqs.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    return outcomes;
}

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (const double x : xs)
        s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2)
        return 0.0;
    const double m = mean(xs);
    double s = 0.0;
    for (const double x : xs)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

} // namespace ogcb::bench
