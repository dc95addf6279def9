// Exact finite-MDP verifier: brute-force enumeration and dynamic programming
// over small goal-conditioned MDPs to check the surrogate-objective bound
// chain, its weighted extension, the matching-gradient identity at the
// behavior policy, and the two policy-improvement statements.

#pragma once

#include "ogcb/rng.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ogcb::theory {

// Enumeration stays desk-scale; operations throw beyond these caps.
inline constexpr int kMaxEnumStates = 6;
inline constexpr int kMaxEnumActions = 6;
inline constexpr int kMaxEnumHorizon = 4;

struct DiscreteGCMDP {
    int n_states = 0;
    int n_actions = 0;
    int n_goals = 0;
    int horizon = 0;
    double gamma = 1.0;
    std::vector<double> transition; // [s][a][s'], rows sum to 1
    std::vector<int> phi;           // state -> goal
    std::vector<double> init_dist;  // [s]
    std::vector<double> goal_dist;  // [g]

    double p(int s, int a, int s2) const {
        return transition[(static_cast<std::size_t>(s) * n_actions + a) *
                              n_states +
                          s2];
    }
    void validate() const; // throws std::invalid_argument
};

struct TabularPolicy {
    int n_states = 0;
    int n_goals = 0;
    int n_actions = 0;
    std::vector<double> prob; // [s][g][a], rows sum to 1

    double at(int s, int g, int a) const {
        return prob[(static_cast<std::size_t>(s) * n_goals + g) * n_actions + a];
    }
    double& at(int s, int g, int a) {
        return prob[(static_cast<std::size_t>(s) * n_goals + g) * n_actions + a];
    }
    bool strictly_positive() const;

    static TabularPolicy uniform(int s, int g, int a);
    // Softmax over the action axis of logits [s][g][a].
    static TabularPolicy from_logits(int s, int g, int a,
                                     std::span<const double> logits);
};

// Exact goal-conditioned return E[sum_t gamma^(t-1) 1[phi(s_t)=g]] under pi,
// by full trajectory enumeration.
double exact_J(const DiscreteGCMDP& mdp, const TabularPolicy& pi);

// Surrogate objective: trajectories from pi_b, log-likelihood of pi against
// the discounted indicator suffix sums. pi must be strictly positive.
double exact_J_surr(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                    const TabularPolicy& pi_b);

// Weighted relabeled objective with uniform t and i >= t draws (exact 1/T and
// 1/(T-t+1) factors). The weight sees 0-based (t, i) and the relabeled goal.
using WeightFn =
    std::function<double(int t, int i, int s_t, int a_t, int goal_i)>;
double exact_J_wgcsl(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                     const TabularPolicy& pi_b, const WeightFn& weight);
double exact_J_gcsl(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                    const TabularPolicy& pi_b);

struct Theorem1Report {
    double j_surr = 0.0;
    double t_j_wgcsl = 0.0;
    double t_j_gcsl = 0.0;
    bool holds = false;
};

// J_surr >= T*J_WGCSL >= T*J_GCSL with the discount-gap weight gamma^(i-t).
Theorem1Report check_theorem1(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                              const TabularPolicy& pi_b, double tol = 1e-9);

struct CheckReport {
    bool holds = false;
    double max_violation = 0.0;
};

// J_surr >= T*J_WGCSL with weight gamma^(i-t) * h(s,a,g); requires h >= 1.
// h is indexed [s][a][g].
CheckReport check_corollary1(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                             const TabularPolicy& pi_b,
                             const std::vector<double>& h, double tol = 1e-9);

// Max component difference between grad J and T * grad J_surr at the behavior
// policy (softmax logits, central differences on the exact enumerators),
// relative to the largest gradient magnitude. Returns 0 when both vanish.
double grad_match(const DiscreteGCMDP& mdp, const std::vector<double>& logits_b,
                  double fd_step = 1e-6);

// Same quantity evaluated with pi at different logits than the behavior
// policy; used to confirm the identity only holds at pi_b.
double grad_match_at(const DiscreteGCMDP& mdp,
                     const std::vector<double>& logits_pi,
                     const std::vector<double>& logits_b, double fd_step = 1e-6);

// Finite-horizon time-indexed values: V[t][s][g] = 1[phi(s)=g] +
// gamma * E[V[t+1]], V[horizon] = 0. Flattened [t][s][g].
std::vector<double> exact_policy_eval(const DiscreteGCMDP& mdp,
                                      const TabularPolicy& pi);

struct Prop1Config {
    double clip_bound = 10.0;
    double eps_min = 0.05;
    double percentile = 80.0;
};

// Reweighting the policy by the (clipped exponential x best-advantage) factor
// of its own exact advantages never lowers any V[t][s][g].
CheckReport check_prop1(const DiscreteGCMDP& mdp,
                        const TabularPolicy& pi_relabel, const Prop1Config& cfg,
                        double tol = 1e-9);

struct Prop2Report {
    bool applicable = false;
    bool holds = false;
    double max_violation = 0.0;   // largest V_b - V_relabel over dataset cells
    double max_improvement = 0.0; // largest V_relabel - V_b over dataset cells
    std::string note;
};

// Collects trajectories under pi_b on a deterministic MDP, applies the
// accepting relabel strategy, forms empirical time-indexed policies from the
// original and relabeled data, and compares their exact values on every
// (t, s, g) present in the original data.
Prop2Report check_prop2(const DiscreteGCMDP& mdp, const TabularPolicy& pi_b,
                        int n_traj, std::uint64_t seed, double tol = 1e-9);

struct Prop2Fixture {
    std::string name;
    DiscreteGCMDP mdp;
    TabularPolicy pi_b;
    bool expect_applicable = true;
};

// Hand-built deterministic fixtures: one where every trajectory succeeds, one
// with a failing goal whose relabel strictly improves, one violating the
// deterministic-transition assumption.
std::vector<Prop2Fixture> prop2_fixtures();

// Random instances: Dirichlet(1) transition/policy rows, uniform sizes within
// the caps, gamma drawn from the given set.
DiscreteGCMDP random_mdp(rng::Engine& eng, int max_states, int max_actions,
                         int max_goals, int max_horizon,
                         std::span<const double> gammas);
TabularPolicy random_policy(const DiscreteGCMDP& mdp, rng::Engine& eng);

} // namespace ogcb::theory
