// Hindsight goal relabeling. sample_relabeled_batch implements minibatch
// future-state relabeling; relabel_prop2 implements the slower accepting
// strategy that only relabels failed suffixes whose relabeled future return
// beats every matching suffix already in the dataset.

#pragma once

#include "ogcb/data.hpp"
#include "ogcb/rng.hpp"

#include <cstdint>
#include <vector>

namespace ogcb::relabel {

// Columnar minibatch of relabeled transitions.
struct TransitionBatch {
    int n = 0;
    int obs_dim = 0;
    int act_dim = 0;
    int goal_dim = 0;
    std::vector<float> states;      // [n][obs_dim]
    std::vector<float> actions;     // [n][act_dim]
    std::vector<float> next_states; // [n][obs_dim]
    std::vector<float> goals;       // [n][goal_dim], goal actually used
    std::vector<float> rewards;     // {0,1}, recomputed against goals
    // Steps between the successor state and the relabeled goal's state
    // (0 for a kept goal or the guaranteed-success next-state relabel).
    std::vector<std::int32_t> deltas;
    std::vector<std::uint8_t> relabeled;

    void resize(int n_, int obs, int act, int goal);

    struct View {
        const float* state;
        const float* action;
        const float* next_state;
        const float* goal;
        float reward;
        std::int32_t delta;
        bool relabeled;
    };
    View at(int i) const;
};

// Uniform (trajectory, t) draws; with probability p_relabel the goal becomes a
// future achieved goal phi(s_i), i uniform over the states after t. Rewards
// are recomputed on the next achieved goal. Throws on an empty dataset or p
// outside [0,1].
void sample_relabeled_batch(const data::OfflineDataset& ds, int batch_size,
                            double p_relabel, rng::Engine& eng,
                            TransitionBatch& out);

// Samples transitions with the per-transition goals recorded by
// relabel_prop2. Throws if the dataset carries none.
void sample_prop2_batch(const data::OfflineDataset& ds, int batch_size,
                        rng::Engine& eng, TransitionBatch& out);

// Accepting relabel strategy: per (trajectory, t), keep the original goal when
// some future achieved goal already meets it; otherwise draw i ~ U[t, T] and
// relabel to phi(s_i) only when the relabeled future return strictly exceeds
// the best future return among original suffixes whose trajectory goal matches
// phi(s_i) within the goal radius. The result carries per-transition goals.
data::OfflineDataset relabel_prop2(const data::OfflineDataset& ds,
                                   std::uint64_t seed);

} // namespace ogcb::relabel
