#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ogcb/data.hpp"
#include "ogcb/env.hpp"
#include "ogcb/relabel.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <span>

using namespace ogcb;

namespace {

data::OfflineDataset tiny_dataset(std::uint64_t seed, int n_traj = 8) {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_reach);
    return data::collect(spec, data::Collector::random, n_traj, seed);
}

bool rows_equal(const float* a, const float* b, int n) {
    return std::memcmp(a, b, sizeof(float) * static_cast<std::size_t>(n)) == 0;
}

} // namespace

TEST_CASE("p_relabel 0 keeps the trajectory goal everywhere") {
    const auto ds = tiny_dataset(1);
    rng::Engine eng(2);
    relabel::TransitionBatch batch;
    relabel::sample_relabeled_batch(ds, 512, 0.0, eng, batch);
    for (int i = 0; i < batch.n; ++i) {
        const auto v = batch.at(i);
        CHECK_FALSE(v.relabeled);
        CHECK(v.delta == 0);
        bool matches_a_desired = false;
        for (std::int64_t j = 0; j < ds.manifest.n_traj && !matches_a_desired;
             ++j)
            matches_a_desired = rows_equal(v.goal, ds.desired(j), 2);
        CHECK(matches_a_desired);
    }
}

TEST_CASE("relabeled rewards match an independent recompute") {
    const auto ds = tiny_dataset(3);
    rng::Engine eng(4);
    relabel::TransitionBatch batch;
    for (int round = 0; round < 20; ++round) {
        relabel::sample_relabeled_batch(ds, 256, 0.8, eng, batch);
        for (int i = 0; i < batch.n; ++i) {
            const auto v = batch.at(i);
            const env::Vec2 next_ach{v.next_state[0], v.next_state[1]};
            const float want = env::sparse_reward(
                next_ach, env::Vec2{v.goal[0], v.goal[1]}, 1.0f);
            CHECK(v.reward == want);
        }
    }
}

TEST_CASE("minimum-gap relabels target the successor state and pay reward 1") {
    const auto ds = tiny_dataset(5);
    rng::Engine eng(6);
    relabel::TransitionBatch batch;
    int zero_gap_relabels = 0;
    relabel::sample_relabeled_batch(ds, 4096, 0.5, eng, batch);
    for (int i = 0; i < batch.n; ++i) {
        const auto v = batch.at(i);
        CHECK(v.delta >= 0);
        CHECK(v.delta < ds.manifest.horizon);
        if (!v.relabeled)
            CHECK(v.delta == 0);
        if (v.relabeled && v.delta == 0) {
            // Relabeled to the successor's achieved goal: success by replay.
            CHECK(rows_equal(v.goal, v.next_state, 2));
            CHECK(v.reward == 1.0f);
            ++zero_gap_relabels;
        }
    }
    CHECK(zero_gap_relabels > 0);
}

TEST_CASE("the last transition is forced onto the terminal achieved goal") {
    const auto ds = tiny_dataset(7, 1);
    const int T = ds.manifest.horizon;
    rng::Engine eng(8);
    relabel::TransitionBatch batch;
    bool saw_last = false;
    for (int round = 0; round < 200; ++round) {
        relabel::sample_relabeled_batch(ds, 64, 1.0, eng, batch);
        for (int i = 0; i < batch.n; ++i) {
            const auto v = batch.at(i);
            if (!rows_equal(v.state, ds.state(0, T - 1), 2))
                continue;
            CHECK(rows_equal(v.goal, ds.achieved(0, T), 2));
            CHECK(v.delta == 0);
            saw_last = true;
        }
    }
    CHECK(saw_last);
}

TEST_CASE("relabel fraction and future-index uniformity") {
    const auto ds = tiny_dataset(9, 4);
    const int T = ds.manifest.horizon;
    rng::Engine eng(10);
    relabel::TransitionBatch batch;
    std::int64_t relabeled = 0, total = 0;
    // chi^2 over the delta distribution for transitions sampled at a fixed t,
    // recovered from delta <= T - t by keying on the state row.
    std::map<int, std::int64_t> delta_counts;
    std::int64_t t0_draws = 0;
    const int probe_t = 10;
    for (int round = 0; round < 250; ++round) {
        relabel::sample_relabeled_batch(ds, 4096, 0.8, eng, batch);
        total += batch.n;
        for (int i = 0; i < batch.n; ++i) {
            const auto v = batch.at(i);
            if (v.relabeled)
                ++relabeled;
            if (v.relabeled &&
                rows_equal(v.state, ds.state(0, probe_t), 2)) {
                ++t0_draws;
                delta_counts[v.delta] += 1;
            }
        }
    }
    const double frac = static_cast<double>(relabeled) / total;
    CHECK(frac > 0.79);
    CHECK(frac < 0.81);

    // i is uniform over the future states: T - probe_t buckets.
    const int buckets = T - probe_t;
    const double expected = static_cast<double>(t0_draws) / buckets;
    REQUIRE(expected > 20.0);
    double chi2 = 0.0;
    for (int d = 0; d < buckets; ++d) {
        const double observed = static_cast<double>(delta_counts[d]);
        chi2 += (observed - expected) * (observed - expected) / expected;
    }
    // 39 dof, upper 0.999 quantile is ~72.1.
    CHECK(chi2 < 72.1);
}

TEST_CASE("empty dataset and bad probability are rejected") {
    data::OfflineDataset empty;
    rng::Engine eng(1);
    relabel::TransitionBatch batch;
    CHECK_THROWS_AS(relabel::sample_relabeled_batch(empty, 8, 0.5, eng, batch),
                    std::invalid_argument);
    const auto ds = tiny_dataset(2, 1);
    CHECK_THROWS_AS(relabel::sample_relabeled_batch(ds, 8, 1.5, eng, batch),
                    std::invalid_argument);
}

namespace {

// Builds a dataset from explicit straight-line trajectories; each row is
// (start, per-step displacement, goal).
data::OfflineDataset scripted_dataset(
    const std::vector<std::array<float, 6>>& rows) {
    const env::EnvSpec spec = env::make_spec(env::EnvId::point_reach);
    data::OfflineDataset ds;
    ds.manifest.env_id = spec.id;
    ds.manifest.horizon = spec.horizon;
    ds.manifest.n_traj = static_cast<std::int64_t>(rows.size());
    const int T = spec.horizon;
    for (const auto& row : rows) {
        env::Vec2 s{row[0], row[1]};
        const env::Vec2 step{row[2], row[3]};
        ds.desired_goals.push_back(row[4]);
        ds.desired_goals.push_back(row[5]);
        for (int t = 0; t <= T; ++t) {
            ds.states.push_back(s.x);
            ds.states.push_back(s.y);
            ds.achieved_goals.push_back(s.x);
            ds.achieved_goals.push_back(s.y);
            if (t == T)
                break;
            ds.actions.push_back(step.x);
            ds.actions.push_back(step.y);
            s = env::step(spec, s, step);
        }
    }
    return ds;
}

double suffix_return_at(const data::OfflineDataset& ds, std::int64_t j, int t,
                        const float* goal) {
    double r = 0.0;
    for (int k = t; k < ds.manifest.horizon; ++k)
        r += env::sparse_reward(
            std::span<const float>(ds.achieved(j, k + 1), 2),
            std::span<const float>(goal, 2), 1.0f);
    return r;
}

} // namespace

TEST_CASE("prop2 keeps goals for suffixes that already succeed") {
    // One trajectory marching straight into its goal.
    const auto ds = scripted_dataset({{-4, 0, 1, 0, 4, 0}});
    const auto out = relabel::relabel_prop2(ds, 77);
    REQUIRE(out.has_transition_goals());
    for (int t = 0; t < out.manifest.horizon; ++t) {
        const float* g = out.transition_goals.data() + t * 2;
        CHECK(g[0] == 4.0f);
        CHECK(g[1] == 0.0f);
        CHECK(out.transition_deltas[t] == 0);
    }
}

TEST_CASE("prop2 always accepts when no matching trajectory exists") {
    // Stationary trajectory far from its goal: every relabel candidate is the
    // start point itself and there is no other goal-matching trajectory.
    const auto ds = scripted_dataset({{-4, -4, 0, 0, 4, 4}});
    const auto out = relabel::relabel_prop2(ds, 3);
    for (int t = 0; t < out.manifest.horizon; ++t) {
        const float* g = out.transition_goals.data() + t * 2;
        CHECK(g[0] == -4.0f);
        CHECK(g[1] == -4.0f);
    }
}

TEST_CASE("prop2 accepted relabels dominate matching original suffixes") {
    // Three trajectories: a slow zig toward (4,0), a failing one that moves
    // through the same region quickly, and one with an unrelated goal.
    const auto ds = scripted_dataset({
        {-4, 0, 0.25f, 0, 4, 0},  // slow, reaches (4,0) eventually? 0.25*50=12.5 -> yes
        {-4, 0, 1, 0, -4, 4},     // fails its goal (moves away from it)
        {0, -4, 0, 1, 3, 3},      // unrelated
    });
    const auto out = relabel::relabel_prop2(ds, 5);
    const int T = out.manifest.horizon;
    for (std::int64_t j = 0; j < out.manifest.n_traj; ++j) {
        for (int t = 0; t < T; ++t) {
            const float* g = out.transition_goals.data() + (j * T + t) * 2;
            const bool kept = rows_equal(g, ds.desired(j), 2);
            if (kept)
                continue;
            // Accepted relabel: recheck the dominance condition by brute force.
            const double relabeled = suffix_return_at(ds, j, t, g);
            double best = -1.0;
            for (std::int64_t k = 0; k < ds.manifest.n_traj; ++k) {
                if (env::sparse_reward(std::span<const float>(ds.desired(k), 2),
                                       std::span<const float>(g, 2),
                                       1.0f) > 0.0f)
                    best = std::max(best, suffix_return_at(ds, k, 0, ds.desired(k)));
            }
            if (best >= 0.0)
                CHECK(relabeled > best);
            CHECK(out.transition_deltas[j * T + t] >= 0);
        }
    }
}

TEST_CASE("prop2 sampling uses recorded goals and recomputed rewards") {
    const auto ds = scripted_dataset({{-4, 0, 1, 0, -4, 4}, {2, 2, 0, 0, 2, 2}});
    const auto out = relabel::relabel_prop2(ds, 9);
    rng::Engine eng(11);
    relabel::TransitionBatch batch;
    relabel::sample_prop2_batch(out, 512, eng, batch);
    for (int i = 0; i < batch.n; ++i) {
        const auto v = batch.at(i);
        const float want = env::sparse_reward(
            env::Vec2{v.next_state[0], v.next_state[1]},
            env::Vec2{v.goal[0], v.goal[1]}, 1.0f);
        CHECK(v.reward == want);
    }
    // Plain datasets without recorded goals are rejected.
    CHECK_THROWS_AS(relabel::sample_prop2_batch(ds, 8, eng, batch),
                    std::invalid_argument);
}
