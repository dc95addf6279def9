#include "ogcb/evaluate.hpp"

#include "ogcb/rng.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ogcb::eval {

namespace {

constexpr const char* kHeader =
    "step,avg_return,avg_discounted_return,final_distance,success_rate,"
    "td_loss,actor_loss,mean_weight";

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

EvalReport run_episodes(const env::EnvSpec& spec, int n_episodes,
                        std::uint64_t seed, double discount,
                        const PolicyFn& policy) {
    if (n_episodes <= 0)
        throw std::invalid_argument("run_episodes: n_episodes must be positive");
    const int n = n_episodes;
    std::vector<env::Vec2> states(n), goals(n);
    for (int e = 0; e < n; ++e) {
        const env::EnvObservation obs = env::reset(spec, rng::mix(seed, e));
        states[e] = obs.state;
        goals[e] = obs.desired_goal;
    }

    std::vector<float> state_rows(static_cast<std::size_t>(n) * spec.obs_dim);
    std::vector<float> goal_rows(static_cast<std::size_t>(n) * spec.goal_dim);
    for (int e = 0; e < n; ++e) {
        goal_rows[2 * e] = goals[e].x;
        goal_rows[2 * e + 1] = goals[e].y;
    }
    std::vector<float> actions(static_cast<std::size_t>(n) * spec.act_dim);

    std::vector<double> returns(n, 0.0), disc_returns(n, 0.0);
    std::vector<float> last_reward(n, 0.0f);
    double disc = 1.0;
    for (int t = 0; t < spec.horizon; ++t) {
        for (int e = 0; e < n; ++e) {
            state_rows[2 * e] = states[e].x;
            state_rows[2 * e + 1] = states[e].y;
        }
        policy(state_rows.data(), goal_rows.data(), n, actions.data());
        for (int e = 0; e < n; ++e) {
            states[e] = env::step(spec, states[e],
                                  env::Vec2{actions[2 * e], actions[2 * e + 1]});
            const float r = env::sparse_reward(env::phi(spec, states[e]), goals[e],
                                               spec.threshold);
            returns[e] += r;
            disc_returns[e] += disc * r;
            last_reward[e] = r;
        }
        disc *= discount;
    }

    EvalReport rep;
    rep.n_episodes = n;
    rep.seed = seed;
    double dist_sum = 0.0, succ_sum = 0.0, ret_sum = 0.0, dret_sum = 0.0;
    for (int e = 0; e < n; ++e) {
        ret_sum += returns[e];
        dret_sum += disc_returns[e];
        dist_sum += env::goal_distance(env::phi(spec, states[e]), goals[e]);
        succ_sum += last_reward[e];
    }
    rep.avg_return = ret_sum / n;
    rep.avg_discounted_return = dret_sum / n;
    rep.final_distance = dist_sum / n;
    rep.success_rate = succ_sum / n;
    return rep;
}

EvalReport evaluate(const agent::AgentState& agent, const env::EnvSpec& spec,
                    int n_episodes, std::uint64_t seed) {
    if (agent.obs_dim != spec.obs_dim || agent.goal_dim != spec.goal_dim ||
        agent.act_dim != spec.act_dim)
        throw std::invalid_argument("evaluate: agent does not match environment");

    nn::MlpCache cache;
    std::vector<float> rows, rows_norm;
    const int od = spec.obs_dim, gd = spec.goal_dim, ad = spec.act_dim;
    const auto policy_fn = [&](const float* states, const float* goals, int n,
                               float* actions) {
        rows.resize(static_cast<std::size_t>(n) * (od + gd));
        for (int i = 0; i < n; ++i) {
            float* row = rows.data() + static_cast<std::size_t>(i) * (od + gd);
            std::memcpy(row, states + static_cast<std::size_t>(i) * od,
                        sizeof(float) * od);
            std::memcpy(row + od, goals + static_cast<std::size_t>(i) * gd,
                        sizeof(float) * gd);
        }
        rows_norm.resize(rows.size());
        agent.norm.apply(rows.data(), rows_norm.data(), n);
        nn::mlp_forward(agent.policy, rows_norm.data(), n, cache);
        std::memcpy(actions, cache.output(),
                    sizeof(float) * static_cast<std::size_t>(n) * ad);
    };
    return run_episodes(spec, n_episodes, seed, agent.cfg.rl_gamma, policy_fn);
}

void emit_metrics(const std::vector<agent::MetricRow>& log,
                  const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << kHeader << '\n';
    for (const auto& row : log) {
        out << row.step << ',' << format_double(row.avg_return) << ','
            << format_double(row.avg_discounted_return) << ','
            << format_double(row.final_distance) << ','
            << format_double(row.success_rate) << ','
            << format_double(row.td_loss) << ','
            << format_double(row.actor_loss) << ','
            << format_double(row.mean_weight) << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<agent::MetricRow> parse_metrics(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::runtime_error("metrics csv: bad header");
    std::vector<agent::MetricRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 8)
            throw std::runtime_error("metrics csv: bad row");
        auto parse = [](const std::string& s) {
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc())
                throw std::runtime_error("metrics csv: bad number: " + s);
            return v;
        };
        agent::MetricRow row;
        row.step = static_cast<std::int64_t>(parse(fields[0]));
        row.avg_return = parse(fields[1]);
        row.avg_discounted_return = parse(fields[2]);
        row.final_distance = parse(fields[3]);
        row.success_rate = parse(fields[4]);
        row.td_loss = parse(fields[5]);
        row.actor_loss = parse(fields[6]);
        row.mean_weight = parse(fields[7]);
        rows.push_back(row);
    }
    return rows;
}

} // namespace ogcb::eval
