#include "ogcb/data.hpp"

#include "ogcb/blob_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ogcb::data {

using nlohmann::json;

Collector collector_from_string(const std::string& s) {
    if (s == "random")
        return Collector::random;
    if (s == "expert")
        return Collector::expert;
    throw std::invalid_argument("unknown collector: " + s);
}

std::string to_string(Collector c) {
    return c == Collector::random ? "random" : "expert";
}

const float* OfflineDataset::state(std::int64_t traj, int t) const {
    return states.data() +
           (traj * (manifest.horizon + 1) + t) * manifest.obs_dim;
}
const float* OfflineDataset::action(std::int64_t traj, int t) const {
    return actions.data() + (traj * manifest.horizon + t) * manifest.act_dim;
}
const float* OfflineDataset::achieved(std::int64_t traj, int t) const {
    return achieved_goals.data() +
           (traj * (manifest.horizon + 1) + t) * manifest.goal_dim;
}
const float* OfflineDataset::desired(std::int64_t traj) const {
    return desired_goals.data() + traj * manifest.goal_dim;
}

env::Vec2 expert_action(env::Vec2 state, env::Vec2 goal, float noise_sigma,
                        rng::Engine& eng) {
    const float mx = std::clamp(goal.x - state.x, -1.0f, 1.0f);
    const float my = std::clamp(goal.y - state.y, -1.0f, 1.0f);
    float ax = mx, ay = my;
    if (noise_sigma > 0.0f) {
        ax += noise_sigma * static_cast<float>(rng::normal(eng));
        ay += noise_sigma * static_cast<float>(rng::normal(eng));
    }
    return env::Vec2{std::clamp(ax, -1.0f, 1.0f), std::clamp(ay, -1.0f, 1.0f)};
}

OfflineDataset collect(const env::EnvSpec& spec, Collector collector,
                       std::int64_t n_traj, std::uint64_t seed,
                       float noise_sigma) {
    if (n_traj < 1)
        throw std::invalid_argument("collect: n_traj must be >= 1");
    OfflineDataset ds;
    ds.manifest.env_id = spec.id;
    ds.manifest.obs_dim = spec.obs_dim;
    ds.manifest.goal_dim = spec.goal_dim;
    ds.manifest.act_dim = spec.act_dim;
    ds.manifest.horizon = spec.horizon;
    ds.manifest.n_traj = n_traj;
    ds.manifest.collector = collector;
    ds.manifest.noise_sigma = collector == Collector::expert ? noise_sigma : 0.0f;
    ds.manifest.seed = seed;

    const int T = spec.horizon;
    ds.states.resize(static_cast<std::size_t>(n_traj) * (T + 1) * spec.obs_dim);
    ds.actions.resize(static_cast<std::size_t>(n_traj) * T * spec.act_dim);
    ds.achieved_goals.resize(static_cast<std::size_t>(n_traj) * (T + 1) *
                             spec.goal_dim);
    ds.desired_goals.resize(static_cast<std::size_t>(n_traj) * spec.goal_dim);

    rng::Engine eng(seed);
    for (std::int64_t j = 0; j < n_traj; ++j) {
        const env::EnvObservation obs = env::reset(spec, eng());
        env::Vec2 s = obs.state;
        const env::Vec2 g = obs.desired_goal;
        float* dg = ds.desired_goals.data() + j * spec.goal_dim;
        dg[0] = g.x;
        dg[1] = g.y;
        for (int t = 0; t <= T; ++t) {
            float* st = ds.states.data() + (j * (T + 1) + t) * spec.obs_dim;
            float* ag =
                ds.achieved_goals.data() + (j * (T + 1) + t) * spec.goal_dim;
            st[0] = s.x;
            st[1] = s.y;
            const env::Vec2 ach = env::phi(spec, s);
            ag[0] = ach.x;
            ag[1] = ach.y;
            if (t == T)
                break;
            env::Vec2 a;
            if (collector == Collector::random)
                a = env::Vec2{rng::uniformf(eng, -1.0f, 1.0f),
                              rng::uniformf(eng, -1.0f, 1.0f)};
            else
                a = expert_action(s, g, noise_sigma, eng);
            float* at = ds.actions.data() + (j * T + t) * spec.act_dim;
            at[0] = a.x;
            at[1] = a.y;
            s = env::step(spec, s, a);
        }
    }
    return ds;
}

namespace {

json manifest_to_json(const DatasetManifest& m) {
    return json{{"env_id", env::to_string(m.env_id)},
                {"obs_dim", m.obs_dim},
                {"goal_dim", m.goal_dim},
                {"act_dim", m.act_dim},
                {"horizon", m.horizon},
                {"n_traj", m.n_traj},
                {"collector", to_string(m.collector)},
                {"noise_sigma", m.noise_sigma},
                {"seed", m.seed},
                {"format_version", m.format_version}};
}

DatasetManifest manifest_from_json(const json& j) {
    DatasetManifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != 1)
        throw io::version_error("dataset: unsupported format_version " +
                                std::to_string(m.format_version));
    m.env_id = env::env_id_from_string(j.at("env_id").get<std::string>());
    m.obs_dim = j.at("obs_dim").get<int>();
    m.goal_dim = j.at("goal_dim").get<int>();
    m.act_dim = j.at("act_dim").get<int>();
    m.horizon = j.at("horizon").get<int>();
    m.n_traj = j.at("n_traj").get<std::int64_t>();
    m.collector = collector_from_string(j.at("collector").get<std::string>());
    m.noise_sigma = j.at("noise_sigma").get<float>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (m.obs_dim <= 0 || m.goal_dim <= 0 || m.act_dim <= 0 || m.horizon < 1 ||
        m.n_traj < 0)
        throw io::shape_error("dataset: invalid manifest dimensions");
    return m;
}

} // namespace

void save(const OfflineDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << manifest_to_json(ds.manifest).dump() << '\n';
    io::write_block_f32(out, ds.states.data(), ds.states.size());
    io::write_block_f32(out, ds.actions.data(), ds.actions.size());
    io::write_block_f32(out, ds.achieved_goals.data(), ds.achieved_goals.size());
    io::write_block_f32(out, ds.desired_goals.data(), ds.desired_goals.size());
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

OfflineDataset load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    OfflineDataset ds;
    const json j = json::parse(io::read_manifest_line(in), nullptr, false);
    if (j.is_discarded())
        throw io::shape_error("dataset: manifest is not valid JSON");
    ds.manifest = manifest_from_json(j);

    const auto& m = ds.manifest;
    const std::uint64_t n = static_cast<std::uint64_t>(m.n_traj);
    ds.states = io::read_block_f32(in, n * (m.horizon + 1) * m.obs_dim);
    ds.actions = io::read_block_f32(in, n * m.horizon * m.act_dim);
    ds.achieved_goals = io::read_block_f32(in, n * (m.horizon + 1) * m.goal_dim);
    ds.desired_goals = io::read_block_f32(in, n * m.goal_dim);
    io::expect_eof(in);
    return ds;
}

double dataset_return(const OfflineDataset& ds, std::optional<double> discount) {
    if (ds.manifest.n_traj == 0)
        throw std::invalid_argument("dataset_return: empty dataset");
    const int T = ds.manifest.horizon;
    const float eps = env::make_spec(ds.manifest.env_id).threshold;
    double total = 0.0;
    for (std::int64_t j = 0; j < ds.manifest.n_traj; ++j) {
        const float* dg = ds.desired(j);
        double ret = 0.0;
        double w = 1.0;
        for (int t = 0; t < T; ++t) {
            const float* ag = ds.achieved(j, t + 1);
            const float r = env::sparse_reward(
                std::span<const float>(ag, ds.manifest.goal_dim),
                std::span<const float>(dg, ds.manifest.goal_dim), eps);
            ret += w * r;
            if (discount)
                w *= *discount;
        }
        total += ret;
    }
    return total / static_cast<double>(ds.manifest.n_traj);
}

} // namespace ogcb::data
