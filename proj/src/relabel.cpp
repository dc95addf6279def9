#include "ogcb/relabel.hpp"

#include "ogcb/env.hpp"

#include <cmath>
#include <cstring>
#include <span>
#include <stdexcept>

namespace ogcb::relabel {

void TransitionBatch::resize(int n_, int obs, int act, int goal) {
    n = n_;
    obs_dim = obs;
    act_dim = act;
    goal_dim = goal;
    states.resize(static_cast<std::size_t>(n) * obs);
    actions.resize(static_cast<std::size_t>(n) * act);
    next_states.resize(static_cast<std::size_t>(n) * obs);
    goals.resize(static_cast<std::size_t>(n) * goal);
    rewards.resize(n);
    deltas.resize(n);
    relabeled.resize(n);
}

TransitionBatch::View TransitionBatch::at(int i) const {
    return View{states.data() + static_cast<std::size_t>(i) * obs_dim,
                actions.data() + static_cast<std::size_t>(i) * act_dim,
                next_states.data() + static_cast<std::size_t>(i) * obs_dim,
                goals.data() + static_cast<std::size_t>(i) * goal_dim,
                rewards[i],
                deltas[i],
                relabeled[i] != 0};
}

namespace {

void fill_transition(const data::OfflineDataset& ds, std::int64_t traj, int t,
                     const float* goal, float threshold, int i,
                     TransitionBatch& out) {
    const int od = ds.manifest.obs_dim;
    const int ad = ds.manifest.act_dim;
    const int gd = ds.manifest.goal_dim;
    std::memcpy(out.states.data() + static_cast<std::size_t>(i) * od,
                ds.state(traj, t), sizeof(float) * od);
    std::memcpy(out.actions.data() + static_cast<std::size_t>(i) * ad,
                ds.action(traj, t), sizeof(float) * ad);
    std::memcpy(out.next_states.data() + static_cast<std::size_t>(i) * od,
                ds.state(traj, t + 1), sizeof(float) * od);
    std::memcpy(out.goals.data() + static_cast<std::size_t>(i) * gd, goal,
                sizeof(float) * gd);
    out.rewards[i] = env::sparse_reward(
        std::span<const float>(ds.achieved(traj, t + 1), gd),
        std::span<const float>(goal, gd), threshold);
}

} // namespace

void sample_relabeled_batch(const data::OfflineDataset& ds, int batch_size,
                            double p_relabel, rng::Engine& eng,
                            TransitionBatch& out) {
    if (ds.manifest.n_traj == 0)
        throw std::invalid_argument("sample_relabeled_batch: empty dataset");
    if (p_relabel < 0.0 || p_relabel > 1.0)
        throw std::invalid_argument("sample_relabeled_batch: p_relabel not in [0,1]");
    const int T = ds.manifest.horizon;
    const float threshold = env::make_spec(ds.manifest.env_id).threshold;
    out.resize(batch_size, ds.manifest.obs_dim, ds.manifest.act_dim,
               ds.manifest.goal_dim);
    for (int b = 0; b < batch_size; ++b) {
        const std::int64_t traj = rng::uniform_int(eng, 0, ds.manifest.n_traj - 1);
        const int t = static_cast<int>(rng::uniform_int(eng, 0, T - 1));
        const bool relabel = rng::uniform01(eng) < p_relabel;
        if (relabel) {
            // Future achieved goals only; the gap counts steps past the
            // successor state, so the guaranteed-success relabel has delta 0.
            const int i = static_cast<int>(rng::uniform_int(eng, t + 1, T));
            fill_transition(ds, traj, t, ds.achieved(traj, i), threshold, b, out);
            out.deltas[b] = i - t - 1;
            out.relabeled[b] = 1;
        } else {
            fill_transition(ds, traj, t, ds.desired(traj), threshold, b, out);
            out.deltas[b] = 0;
            out.relabeled[b] = 0;
        }
    }
}

void sample_prop2_batch(const data::OfflineDataset& ds, int batch_size,
                        rng::Engine& eng, TransitionBatch& out) {
    if (!ds.has_transition_goals())
        throw std::invalid_argument(
            "sample_prop2_batch: dataset carries no per-transition goals");
    const int T = ds.manifest.horizon;
    const int gd = ds.manifest.goal_dim;
    const float threshold = env::make_spec(ds.manifest.env_id).threshold;
    out.resize(batch_size, ds.manifest.obs_dim, ds.manifest.act_dim, gd);
    for (int b = 0; b < batch_size; ++b) {
        const std::int64_t traj = rng::uniform_int(eng, 0, ds.manifest.n_traj - 1);
        const int t = static_cast<int>(rng::uniform_int(eng, 0, T - 1));
        const float* goal =
            ds.transition_goals.data() + (traj * T + t) * static_cast<std::size_t>(gd);
        fill_transition(ds, traj, t, goal, threshold, b, out);
        out.deltas[b] = ds.transition_deltas[traj * T + t];
        out.relabeled[b] = out.deltas[b] != 0 ? 1 : 0;
    }
}

namespace {

// Undiscounted future return of a suffix from transition t against a goal.
double suffix_return(const data::OfflineDataset& ds, std::int64_t traj, int t,
                     const float* goal, float threshold) {
    const int T = ds.manifest.horizon;
    const int gd = ds.manifest.goal_dim;
    double ret = 0.0;
    for (int j = t; j < T; ++j)
        ret += env::sparse_reward(std::span<const float>(ds.achieved(traj, j + 1), gd),
                                  std::span<const float>(goal, gd), threshold);
    return ret;
}

} // namespace

data::OfflineDataset relabel_prop2(const data::OfflineDataset& ds,
                                   std::uint64_t seed) {
    if (ds.manifest.n_traj == 0)
        throw std::invalid_argument("relabel_prop2: empty dataset");
    const int T = ds.manifest.horizon;
    const int gd = ds.manifest.goal_dim;
    const float threshold = env::make_spec(ds.manifest.env_id).threshold;
    const std::int64_t n = ds.manifest.n_traj;

    // Own-goal future returns per trajectory, plus the first time from which
    // no future achieved goal meets the original goal.
    std::vector<double> full_return(n);
    std::vector<int> last_success(n); // largest i >= 1 with achieved[i] in range
    for (std::int64_t j = 0; j < n; ++j) {
        const float* dg = ds.desired(j);
        full_return[j] = suffix_return(ds, j, 0, dg, threshold);
        int last = 0;
        for (int t = 1; t <= T; ++t) {
            const float r = env::sparse_reward(
                std::span<const float>(ds.achieved(j, t), gd),
                std::span<const float>(dg, gd), threshold);
            if (r > 0.0f)
                last = t;
        }
        last_success[j] = last;
    }

    data::OfflineDataset out = ds;
    out.transition_goals.assign(static_cast<std::size_t>(n) * T * gd, 0.0f);
    out.transition_deltas.assign(static_cast<std::size_t>(n) * T, 0);

    rng::Engine eng(seed);
    for (std::int64_t j = 0; j < n; ++j) {
        const float* dg = ds.desired(j);
        for (int t = 0; t < T; ++t) {
            float* goal_out =
                out.transition_goals.data() + (j * T + t) * static_cast<std::size_t>(gd);
            // Some future achieved goal meets the original goal: keep it.
            if (last_success[j] >= t + 1) {
                std::memcpy(goal_out, dg, sizeof(float) * gd);
                continue;
            }
            const int i = static_cast<int>(rng::uniform_int(eng, t + 1, T));
            const float* cand = ds.achieved(j, i);
            const double relabeled_ret = suffix_return(ds, j, t, cand, threshold);
            // Best future return among original suffixes whose trajectory goal
            // matches the candidate within the goal radius.
            double best = -1.0;
            for (std::int64_t k = 0; k < n; ++k) {
                if (env::sparse_reward(std::span<const float>(ds.desired(k), gd),
                                       std::span<const float>(cand, gd),
                                       threshold) > 0.0f)
                    best = std::max(best, full_return[k]);
            }
            if (best < 0.0 || relabeled_ret > best) {
                std::memcpy(goal_out, cand, sizeof(float) * gd);
                out.transition_deltas[j * T + t] = i - t - 1;
            } else {
                std::memcpy(goal_out, dg, sizeof(float) * gd);
            }
        }
    }
    return out;
}

} // namespace ogcb::relabel
