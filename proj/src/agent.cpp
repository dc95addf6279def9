#include "ogcb/agent.hpp"

#include "ogcb/blob_io.hpp"
#include "ogcb/evaluate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ogcb::agent {

using nlohmann::json;

Algo algo_from_string(const std::string& s) {
    if (s == "wgcsl")
        return Algo::wgcsl;
    if (s == "gcsl")
        return Algo::gcsl;
    if (s == "goal_bc" || s == "goal-bc")
        return Algo::goal_bc;
    if (s == "goal_marwil" || s == "goal-marwil")
        return Algo::goal_marwil;
    throw std::invalid_argument("unknown algo: " + s);
}

std::string to_string(Algo a) {
    switch (a) {
    case Algo::wgcsl: return "wgcsl";
    case Algo::gcsl: return "gcsl";
    case Algo::goal_bc: return "goal_bc";
    case Algo::goal_marwil: return "goal_marwil";
    }
    return "?";
}

RelabelStrategy relabel_strategy_from_string(const std::string& s) {
    if (s == "future")
        return RelabelStrategy::future;
    if (s == "prop2")
        return RelabelStrategy::prop2;
    throw std::invalid_argument("unknown relabel strategy: " + s);
}

std::string to_string(RelabelStrategy s) {
    return s == RelabelStrategy::future ? "future" : "prop2";
}

AdvantageQueue::AdvantageQueue(std::int64_t capacity) : cap_(capacity) {
    if (capacity <= 0)
        throw std::invalid_argument("AdvantageQueue: capacity must be positive");
    buf_.resize(static_cast<std::size_t>(capacity));
}

void AdvantageQueue::push(float v) {
    buf_[static_cast<std::size_t>(head_)] = v;
    head_ = (head_ + 1) % cap_;
    if (count_ < cap_)
        ++count_;
}

void AdvantageQueue::copy_to(std::vector<float>& out) const {
    out.resize(static_cast<std::size_t>(count_));
    const std::int64_t start = (head_ - count_ + cap_) % cap_;
    for (std::int64_t i = 0; i < count_; ++i)
        out[static_cast<std::size_t>(i)] =
            buf_[static_cast<std::size_t>((start + i) % cap_)];
}

double percentile_linear(std::vector<float>& values, double pct) {
    if (values.empty())
        throw std::invalid_argument("percentile_linear: empty values");
    const std::size_t n = values.size();
    if (n == 1)
        return values[0];
    const double idx = (pct / 100.0) * static_cast<double>(n - 1);
    const std::size_t lo =
        static_cast<std::size_t>(std::clamp(std::floor(idx), 0.0,
                                            static_cast<double>(n - 1)));
    const double frac = idx - static_cast<double>(lo);
    std::nth_element(values.begin(), values.begin() + lo, values.end());
    const double vlo = values[lo];
    if (frac <= 0.0 || lo + 1 >= n)
        return vlo;
    const double vhi = *std::min_element(values.begin() + lo + 1, values.end());
    return vlo + frac * (vhi - vlo);
}

double baw_threshold(const AdvantageQueue& queue, std::int64_t train_step,
                     const WeightConfig& cfg, std::vector<float>& scratch) {
    if (queue.size() == 0)
        return -std::numeric_limits<double>::infinity();
    const double pct =
        std::min(cfg.baw_percentile_final,
                 cfg.baw_increment * static_cast<double>(train_step));
    queue.copy_to(scratch);
    return percentile_linear(scratch, pct);
}

double baw_threshold(const AdvantageQueue& queue, std::int64_t train_step,
                     const WeightConfig& cfg) {
    std::vector<float> scratch;
    return baw_threshold(queue, train_step, cfg, scratch);
}

double compute_weight(std::int32_t delta, double advantage, double threshold,
                      const WeightConfig& cfg) {
    if (delta < 0)
        throw std::invalid_argument("compute_weight: negative delta");
    double w = 1.0;
    if (cfg.use_drw)
        w *= std::pow(cfg.drw_gamma, static_cast<double>(delta));
    if (cfg.use_geaw)
        w *= std::min(std::exp(std::min(advantage, 700.0)), cfg.clip_bound);
    if (cfg.use_baw)
        w *= (advantage > threshold) ? 1.0 : cfg.eps_min;
    return w;
}

AgentState make_agent(const AgentConfig& cfg, int obs_dim, int goal_dim,
                      int act_dim, std::uint64_t seed) {
    if (obs_dim <= 0 || goal_dim <= 0 || act_dim <= 0)
        throw std::invalid_argument("make_agent: bad dimensions");
    AgentState a;
    a.cfg = cfg;
    a.obs_dim = obs_dim;
    a.goal_dim = goal_dim;
    a.act_dim = act_dim;

    std::vector<int> pdims{obs_dim + goal_dim};
    for (int i = 0; i < cfg.hidden_layers; ++i)
        pdims.push_back(cfg.hidden_width);
    pdims.push_back(act_dim);

    rng::Engine eng(rng::mix(seed, 1));
    a.policy = nn::init_mlp(pdims, nn::OutputActivation::bounded, eng);
    if (cfg.needs_critic()) {
        std::vector<int> qdims{obs_dim + goal_dim + act_dim};
        for (int i = 0; i < cfg.hidden_layers; ++i)
            qdims.push_back(cfg.hidden_width);
        qdims.push_back(1);
        a.critic = nn::init_mlp(qdims, nn::OutputActivation::linear, eng);
        a.target_critic = a.critic;
        a.critic_opt = nn::make_adam(a.critic);
    }
    a.target_policy = a.policy;
    a.policy_opt = nn::make_adam(a.policy);
    a.norm = nn::Normalizer(obs_dim + goal_dim);
    a.queue = AdvantageQueue(cfg.weights.queue_capacity);
    return a;
}

namespace {

// rows[i] = [states[i] | goals[i]]
void build_sg_rows(const float* states, const float* goals, int n, int od,
                   int gd, std::vector<float>& out) {
    out.resize(static_cast<std::size_t>(n) * (od + gd));
    for (int i = 0; i < n; ++i) {
        float* row = out.data() + static_cast<std::size_t>(i) * (od + gd);
        std::memcpy(row, states + static_cast<std::size_t>(i) * od,
                    sizeof(float) * od);
        std::memcpy(row + od, goals + static_cast<std::size_t>(i) * gd,
                    sizeof(float) * gd);
    }
}

// rows[i] = [sg_norm[i] | actions[i]]
void build_critic_rows(const float* sg_norm, const float* actions, int n,
                       int sgd, int ad, std::vector<float>& out) {
    out.resize(static_cast<std::size_t>(n) * (sgd + ad));
    for (int i = 0; i < n; ++i) {
        float* row = out.data() + static_cast<std::size_t>(i) * (sgd + ad);
        std::memcpy(row, sg_norm + static_cast<std::size_t>(i) * sgd,
                    sizeof(float) * sgd);
        std::memcpy(row + sgd, actions + static_cast<std::size_t>(i) * ad,
                    sizeof(float) * ad);
    }
}

} // namespace

double critic_td_update(AgentState& agent, const relabel::TransitionBatch& batch,
                        Workspace& ws) {
    if (!agent.has_critic())
        throw std::invalid_argument(
            "critic_td_update: configuration has no critic");
    const int n = batch.n;
    if (n <= 0)
        throw std::invalid_argument("critic_td_update: empty batch");
    const int od = agent.obs_dim, gd = agent.goal_dim, ad = agent.act_dim;
    const int sgd = od + gd;
    const float gamma = static_cast<float>(agent.cfg.rl_gamma);
    const float ceil = 1.0f / (1.0f - gamma);

    // Bootstrap value from the target networks on the successor state.
    build_sg_rows(batch.next_states.data(), batch.goals.data(), n, od, gd,
                  ws.raw_rows);
    ws.norm_next.resize(ws.raw_rows.size());
    agent.norm.apply(ws.raw_rows.data(), ws.norm_next.data(), n);
    nn::mlp_forward(agent.target_policy, ws.norm_next.data(), n, ws.aux_cache);
    build_critic_rows(ws.norm_next.data(), ws.aux_cache.output(), n, sgd, ad,
                      ws.critic_in);
    nn::mlp_forward(agent.target_critic, ws.critic_in.data(), n, ws.critic_cache);
    const float* q_next = ws.critic_cache.output();

    ws.td_targets.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ws.td_targets[i] =
            std::clamp(batch.rewards[i] + gamma * q_next[i], 0.0f, ceil);

    // Online critic on the stored action.
    build_sg_rows(batch.states.data(), batch.goals.data(), n, od, gd,
                  ws.raw_rows);
    ws.norm_cur.resize(ws.raw_rows.size());
    agent.norm.apply(ws.raw_rows.data(), ws.norm_cur.data(), n);
    build_critic_rows(ws.norm_cur.data(), batch.actions.data(), n, sgd, ad,
                      ws.critic_in);
    nn::mlp_forward(agent.critic, ws.critic_in.data(), n, ws.critic_cache);
    const float* q = ws.critic_cache.output();

    double loss = 0.0;
    ws.grad_out.resize(static_cast<std::size_t>(n));
    const float scale = 2.0f / static_cast<float>(n);
    for (int i = 0; i < n; ++i) {
        const double diff = static_cast<double>(ws.td_targets[i]) - q[i];
        loss += diff * diff;
        ws.grad_out[i] = scale * (q[i] - ws.td_targets[i]);
    }
    loss /= static_cast<double>(n);

    nn::mlp_backward(agent.critic, ws.critic_cache, ws.grad_out.data(), ws.grads,
                     ws.scratch);
    nn::adam_step(agent.critic, ws.grads, agent.critic_opt,
                  static_cast<float>(agent.cfg.learning_rate));

    const float coef = static_cast<float>(agent.cfg.polyak);
    nn::polyak_update(agent.target_policy, agent.policy, coef);
    nn::polyak_update(agent.target_critic, agent.critic, coef);
    return loss;
}

void compute_advantage(AgentState& agent, const relabel::TransitionBatch& batch,
                       Workspace& ws, std::vector<float>& adv_out) {
    if (!agent.has_critic())
        throw std::invalid_argument("compute_advantage: configuration has no critic");
    const int n = batch.n;
    const int od = agent.obs_dim, gd = agent.goal_dim, ad = agent.act_dim;
    const int sgd = od + gd;
    const float gamma = static_cast<float>(agent.cfg.rl_gamma);

    // Policy forward on (s, g); this cache doubles as the actor-update cache.
    build_sg_rows(batch.states.data(), batch.goals.data(), n, od, gd,
                  ws.raw_rows);
    ws.norm_cur.resize(ws.raw_rows.size());
    agent.norm.apply(ws.raw_rows.data(), ws.norm_cur.data(), n);
    nn::mlp_forward(agent.policy, ws.norm_cur.data(), n, ws.policy_cache);
    ws.policy_cache_fresh = true;

    build_sg_rows(batch.next_states.data(), batch.goals.data(), n, od, gd,
                  ws.raw_rows);
    ws.norm_next.resize(ws.raw_rows.size());
    agent.norm.apply(ws.raw_rows.data(), ws.norm_next.data(), n);
    nn::mlp_forward(agent.policy, ws.norm_next.data(), n, ws.aux_cache);

    // One stacked critic pass evaluates V(s,g) and V(s',g).
    ws.stacked_norm.resize(static_cast<std::size_t>(2) * n * (sgd + ad));
    build_critic_rows(ws.norm_cur.data(), ws.policy_cache.output(), n, sgd, ad,
                      ws.critic_in);
    std::memcpy(ws.stacked_norm.data(), ws.critic_in.data(),
                sizeof(float) * ws.critic_in.size());
    build_critic_rows(ws.norm_next.data(), ws.aux_cache.output(), n, sgd, ad,
                      ws.critic_in);
    std::memcpy(ws.stacked_norm.data() + ws.critic_in.size(),
                ws.critic_in.data(), sizeof(float) * ws.critic_in.size());
    nn::mlp_forward(agent.critic, ws.stacked_norm.data(), 2 * n, ws.critic_cache);
    const float* v = ws.critic_cache.output();

    adv_out.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        adv_out[i] = batch.rewards[i] + gamma * v[n + i] - v[i];
}

double compute_actor_gradients(AgentState& agent,
                               const relabel::TransitionBatch& batch,
                               const std::vector<float>& weights, Workspace& ws,
                               nn::MlpGradsT<float>& grads) {
    const int n = batch.n;
    if (static_cast<int>(weights.size()) != n)
        throw std::invalid_argument("actor update: weights length mismatch");
    const int od = agent.obs_dim, gd = agent.goal_dim, ad = agent.act_dim;

    if (!ws.policy_cache_fresh || ws.policy_cache.batch != n) {
        build_sg_rows(batch.states.data(), batch.goals.data(), n, od, gd,
                      ws.raw_rows);
        ws.norm_cur.resize(ws.raw_rows.size());
        agent.norm.apply(ws.raw_rows.data(), ws.norm_cur.data(), n);
        nn::mlp_forward(agent.policy, ws.norm_cur.data(), n, ws.policy_cache);
        ws.policy_cache_fresh = true;
    }
    const float* pred = ws.policy_cache.output();

    double loss = 0.0;
    ws.grad_out.resize(static_cast<std::size_t>(n) * ad);
    const float scale = 2.0f / static_cast<float>(n);
    for (int i = 0; i < n; ++i) {
        double sq = 0.0;
        for (int d = 0; d < ad; ++d) {
            const std::size_t idx = static_cast<std::size_t>(i) * ad + d;
            const float diff = pred[idx] - batch.actions[idx];
            sq += static_cast<double>(diff) * diff;
            ws.grad_out[idx] = scale * weights[i] * diff;
        }
        loss += static_cast<double>(weights[i]) * sq;
    }
    loss /= static_cast<double>(n);

    nn::mlp_backward(agent.policy, ws.policy_cache, ws.grad_out.data(), grads,
                     ws.scratch);
    return loss;
}

double actor_update(AgentState& agent, const relabel::TransitionBatch& batch,
                    const std::vector<float>& weights, Workspace& ws) {
    const double loss =
        compute_actor_gradients(agent, batch, weights, ws, ws.grads);
    nn::adam_step(agent.policy, ws.grads, agent.policy_opt,
                  static_cast<float>(agent.cfg.learning_rate));
    ws.policy_cache_fresh = false;
    return loss;
}

TrainResult train(const AgentConfig& cfg, const env::EnvSpec& spec,
                  const data::OfflineDataset& ds, const TrainOptions& opts) {
    if (ds.manifest.env_id != spec.id || ds.manifest.obs_dim != spec.obs_dim ||
        ds.manifest.goal_dim != spec.goal_dim ||
        ds.manifest.act_dim != spec.act_dim)
        throw std::invalid_argument("train: dataset does not match environment");
    if (cfg.relabel_strategy == RelabelStrategy::prop2 && cfg.algo != Algo::wgcsl)
        throw std::invalid_argument("train: prop2 relabeling is a wgcsl variant");

    TrainResult result{make_agent(cfg, spec.obs_dim, spec.goal_dim, spec.act_dim,
                                  opts.seed),
                       {}};
    AgentState& agent = result.agent;

    const data::OfflineDataset* data_ptr = &ds;
    data::OfflineDataset prop2_data;
    if (cfg.relabel_strategy == RelabelStrategy::prop2) {
        prop2_data = relabel::relabel_prop2(ds, rng::mix(opts.seed, 4));
        data_ptr = &prop2_data;
    }

    rng::Engine sample_eng(rng::mix(opts.seed, 2));
    const std::uint64_t eval_seed = rng::mix(opts.seed, 3);

    Workspace ws;
    relabel::TransitionBatch batch;
    std::vector<float> advantages;
    std::vector<float> weights(static_cast<std::size_t>(cfg.batch_size), 1.0f);

    const double p_relabel = cfg.relabels() ? cfg.p_relabel : 0.0;
    double td_sum = 0.0, actor_sum = 0.0, weight_sum = 0.0;
    std::int64_t interval = 0;

    for (std::int64_t step = 0; step < opts.total_steps; ++step) {
        if (cfg.relabel_strategy == RelabelStrategy::prop2)
            relabel::sample_prop2_batch(*data_ptr, cfg.batch_size, sample_eng,
                                        batch);
        else
            relabel::sample_relabeled_batch(*data_ptr, cfg.batch_size, p_relabel,
                                            sample_eng, batch);
        ws.policy_cache_fresh = false;

        build_sg_rows(batch.states.data(), batch.goals.data(), batch.n,
                      agent.obs_dim, agent.goal_dim, ws.raw_rows);
        agent.norm.update(ws.raw_rows.data(), batch.n);

        double step_td = 0.0;
        double threshold = -std::numeric_limits<double>::infinity();
        if (agent.has_critic()) {
            step_td = critic_td_update(agent, batch, ws);
            compute_advantage(agent, batch, ws, advantages);
            for (const float a : advantages)
                agent.queue.push(a);
            if (cfg.algo == Algo::wgcsl && cfg.weights.use_baw)
                threshold = baw_threshold(agent.queue, agent.train_step,
                                          cfg.weights, ws.queue_scratch);
        }

        weights.resize(static_cast<std::size_t>(batch.n));
        double batch_weight = 0.0;
        if (cfg.algo == Algo::wgcsl) {
            for (int i = 0; i < batch.n; ++i) {
                const double a =
                    agent.has_critic() ? static_cast<double>(advantages[i]) : 0.0;
                weights[i] = static_cast<float>(
                    compute_weight(batch.deltas[i], a, threshold, cfg.weights));
                batch_weight += weights[i];
            }
        } else if (cfg.algo == Algo::goal_marwil) {
            for (int i = 0; i < batch.n; ++i) {
                const double a = static_cast<double>(advantages[i]);
                weights[i] = static_cast<float>(
                    std::min(std::exp(std::min(a, 700.0)), cfg.weights.clip_bound));
                batch_weight += weights[i];
            }
        } else {
            std::fill(weights.begin(), weights.end(), 1.0f);
            batch_weight = static_cast<double>(batch.n);
        }

        const double step_actor = actor_update(agent, batch, weights, ws);

        agent.train_step += 1;
        td_sum += step_td;
        actor_sum += step_actor;
        weight_sum += batch_weight / static_cast<double>(batch.n);
        interval += 1;

        const bool at_eval = (step + 1) % opts.eval_every == 0 ||
                             step + 1 == opts.total_steps;
        if (at_eval) {
            const eval::EvalReport rep =
                eval::evaluate(agent, spec, opts.eval_episodes, eval_seed);
            MetricRow row;
            row.step = step + 1;
            row.avg_return = rep.avg_return;
            row.avg_discounted_return = rep.avg_discounted_return;
            row.final_distance = rep.final_distance;
            row.success_rate = rep.success_rate;
            row.td_loss = td_sum / static_cast<double>(interval);
            row.actor_loss = actor_sum / static_cast<double>(interval);
            row.mean_weight = weight_sum / static_cast<double>(interval);
            result.log.push_back(row);
            td_sum = actor_sum = weight_sum = 0.0;
            interval = 0;
        }
    }
    return result;
}

namespace {

json weight_config_to_json(const WeightConfig& w) {
    return json{{"drw_gamma", w.drw_gamma},
                {"clip_bound", w.clip_bound},
                {"eps_min", w.eps_min},
                {"baw_percentile_final", w.baw_percentile_final},
                {"baw_increment", w.baw_increment},
                {"queue_capacity", w.queue_capacity},
                {"use_drw", w.use_drw},
                {"use_geaw", w.use_geaw},
                {"use_baw", w.use_baw}};
}

WeightConfig weight_config_from_json(const json& j) {
    WeightConfig w;
    w.drw_gamma = j.at("drw_gamma").get<double>();
    w.clip_bound = j.at("clip_bound").get<double>();
    w.eps_min = j.at("eps_min").get<double>();
    w.baw_percentile_final = j.at("baw_percentile_final").get<double>();
    w.baw_increment = j.at("baw_increment").get<double>();
    w.queue_capacity = j.at("queue_capacity").get<std::int64_t>();
    w.use_drw = j.at("use_drw").get<bool>();
    w.use_geaw = j.at("use_geaw").get<bool>();
    w.use_baw = j.at("use_baw").get<bool>();
    return w;
}

json agent_config_to_json(const AgentConfig& c) {
    json j = weight_config_to_json(c.weights);
    j["algo"] = to_string(c.algo);
    j["relabel_strategy"] = to_string(c.relabel_strategy);
    j["rl_gamma"] = c.rl_gamma;
    j["learning_rate"] = c.learning_rate;
    j["polyak"] = c.polyak;
    j["p_relabel"] = c.p_relabel;
    j["batch_size"] = c.batch_size;
    j["hidden_width"] = c.hidden_width;
    j["hidden_layers"] = c.hidden_layers;
    return j;
}

AgentConfig agent_config_from_json(const json& j) {
    AgentConfig c;
    c.weights = weight_config_from_json(j);
    c.algo = algo_from_string(j.at("algo").get<std::string>());
    c.relabel_strategy =
        relabel_strategy_from_string(j.at("relabel_strategy").get<std::string>());
    c.rl_gamma = j.at("rl_gamma").get<double>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.polyak = j.at("polyak").get<double>();
    c.p_relabel = j.at("p_relabel").get<double>();
    c.batch_size = j.at("batch_size").get<int>();
    c.hidden_width = j.at("hidden_width").get<int>();
    c.hidden_layers = j.at("hidden_layers").get<int>();
    return c;
}

} // namespace

void save_agent(const std::string& path, const AgentState& agent,
                env::EnvId env_id) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    json j{{"format_version", 1},
           {"kind", "agent"},
           {"env_id", env::to_string(env_id)},
           {"obs_dim", agent.obs_dim},
           {"goal_dim", agent.goal_dim},
           {"act_dim", agent.act_dim},
           {"train_step", agent.train_step},
           {"config", agent_config_to_json(agent.cfg)},
           {"normalizer", nn::normalizer_to_json(agent.norm)}};
    std::vector<float> queue;
    agent.queue.copy_to(queue);
    j["queue"] = queue;
    j["queue_capacity"] = agent.queue.capacity();
    json nets = json::array();
    nets.push_back(nn::mlp_manifest(agent.policy));
    nets.push_back(nn::mlp_manifest(agent.target_policy));
    if (agent.has_critic()) {
        nets.push_back(nn::mlp_manifest(agent.critic));
        nets.push_back(nn::mlp_manifest(agent.target_critic));
    }
    j["nets"] = nets;
    out << j.dump() << '\n';
    nn::write_mlp_blob(out, agent.policy);
    nn::write_mlp_blob(out, agent.target_policy);
    if (agent.has_critic()) {
        nn::write_mlp_blob(out, agent.critic);
        nn::write_mlp_blob(out, agent.target_critic);
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

LoadedAgent load_agent(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    const json j = json::parse(io::read_manifest_line(in), nullptr, false);
    if (j.is_discarded())
        throw io::shape_error("agent checkpoint: manifest is not valid JSON");
    if (j.at("format_version").get<int>() != 1)
        throw io::version_error("agent checkpoint: unsupported format_version");

    LoadedAgent loaded;
    loaded.env_id = env::env_id_from_string(j.at("env_id").get<std::string>());
    AgentState& a = loaded.agent;
    a.cfg = agent_config_from_json(j.at("config"));
    a.obs_dim = j.at("obs_dim").get<int>();
    a.goal_dim = j.at("goal_dim").get<int>();
    a.act_dim = j.at("act_dim").get<int>();
    a.train_step = j.at("train_step").get<std::int64_t>();
    a.norm = nn::normalizer_from_json(j.at("normalizer"));

    a.queue = AdvantageQueue(j.at("queue_capacity").get<std::int64_t>());
    for (const float v : j.at("queue").get<std::vector<float>>())
        a.queue.push(v);

    const json& nets = j.at("nets");
    const bool with_critic = nets.size() == 4;
    if (nets.size() != 2 && nets.size() != 4)
        throw io::shape_error("agent checkpoint: unexpected net count");
    a.policy = nn::mlp_from_manifest(nets.at(0));
    a.target_policy = nn::mlp_from_manifest(nets.at(1));
    nn::read_mlp_blob(in, a.policy);
    nn::read_mlp_blob(in, a.target_policy);
    if (with_critic) {
        a.critic = nn::mlp_from_manifest(nets.at(2));
        a.target_critic = nn::mlp_from_manifest(nets.at(3));
        nn::read_mlp_blob(in, a.critic);
        nn::read_mlp_blob(in, a.target_critic);
        a.critic_opt = nn::make_adam(a.critic);
    }
    a.policy_opt = nn::make_adam(a.policy);
    io::expect_eof(in);
    return loaded;
}

} // namespace ogcb::agent
