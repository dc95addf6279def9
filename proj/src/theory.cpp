#include "ogcb/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ogcb::theory {

namespace {

constexpr double kDistTol = 1e-12;

void check_enum_caps(const DiscreteGCMDP& mdp) {
    if (mdp.n_states > kMaxEnumStates || mdp.n_actions > kMaxEnumActions ||
        mdp.horizon > kMaxEnumHorizon)
        throw std::invalid_argument("enumeration caps exceeded");
}

} // namespace

void DiscreteGCMDP::validate() const {
    if (n_states < 1 || n_actions < 1 || n_goals < 1 || horizon < 1)
        throw std::invalid_argument("mdp: empty dimensions");
    if (gamma <= 0.0 || gamma > 1.0)
        throw std::invalid_argument("mdp: gamma outside (0,1]");
    if (static_cast<int>(phi.size()) != n_states)
        throw std::invalid_argument("mdp: phi must map every state");
    for (const int g : phi)
        if (g < 0 || g >= n_goals)
            throw std::invalid_argument("mdp: phi out of range");
    auto check_dist = [](std::span<const double> d, const char* what) {
        double sum = 0.0;
        for (const double p : d) {
            if (p < 0.0)
                throw std::invalid_argument(std::string(what) + ": negative mass");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kDistTol)
            throw std::invalid_argument(std::string(what) + ": does not sum to 1");
    };
    check_dist(init_dist, "init_dist");
    check_dist(goal_dist, "goal_dist");
    if (static_cast<std::size_t>(n_states) * n_actions * n_states !=
        transition.size())
        throw std::invalid_argument("mdp: transition tensor shape");
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a) {
            double sum = 0.0;
            for (int s2 = 0; s2 < n_states; ++s2)
                sum += p(s, a, s2);
            if (std::abs(sum - 1.0) > kDistTol)
                throw std::invalid_argument("mdp: transition row does not sum to 1");
        }
}

bool TabularPolicy::strictly_positive() const {
    for (const double v : prob)
        if (v <= 0.0)
            return false;
    return true;
}

TabularPolicy TabularPolicy::uniform(int s, int g, int a) {
    TabularPolicy pi;
    pi.n_states = s;
    pi.n_goals = g;
    pi.n_actions = a;
    pi.prob.assign(static_cast<std::size_t>(s) * g * a, 1.0 / a);
    return pi;
}

TabularPolicy TabularPolicy::from_logits(int s, int g, int a,
                                         std::span<const double> logits) {
    if (logits.size() != static_cast<std::size_t>(s) * g * a)
        throw std::invalid_argument("from_logits: size mismatch");
    TabularPolicy pi;
    pi.n_states = s;
    pi.n_goals = g;
    pi.n_actions = a;
    pi.prob.resize(logits.size());
    for (int i = 0; i < s * g; ++i) {
        const double* row = logits.data() + static_cast<std::size_t>(i) * a;
        double mx = row[0];
        for (int j = 1; j < a; ++j)
            mx = std::max(mx, row[j]);
        double sum = 0.0;
        for (int j = 0; j < a; ++j)
            sum += std::exp(row[j] - mx);
        for (int j = 0; j < a; ++j)
            pi.prob[static_cast<std::size_t>(i) * a + j] =
                std::exp(row[j] - mx) / sum;
    }
    return pi;
}

namespace {

// Visits every length-T (state, action) sequence with its probability under
// the behavior policy conditioned on goal g.
template <typename Visitor>
void for_each_trajectory(const DiscreteGCMDP& mdp, const TabularPolicy& behavior,
                         int g, Visitor&& visit) {
    const int T = mdp.horizon;
    std::vector<int> states(T), actions(T);
    // Depth-first over steps; at depth t the state is fixed and actions branch.
    auto recurse = [&](auto&& self, int t, double prob) -> void {
        if (prob == 0.0)
            return;
        if (t == T) {
            visit(states, actions, prob);
            return;
        }
        const int s = states[t];
        for (int a = 0; a < mdp.n_actions; ++a) {
            const double pa = behavior.at(s, g, a);
            if (pa == 0.0)
                continue;
            actions[t] = a;
            if (t + 1 == T) {
                visit(states, actions, prob * pa);
                continue;
            }
            for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                const double pt = mdp.p(s, a, s2);
                if (pt == 0.0)
                    continue;
                states[t + 1] = s2;
                self(self, t + 1, prob * pa * pt);
            }
        }
    };
    for (int s1 = 0; s1 < mdp.n_states; ++s1) {
        if (mdp.init_dist[s1] == 0.0)
            continue;
        states[0] = s1;
        recurse(recurse, 0, mdp.init_dist[s1]);
    }
}

} // namespace

double exact_J(const DiscreteGCMDP& mdp, const TabularPolicy& pi) {
    mdp.validate();
    check_enum_caps(mdp);
    const int T = mdp.horizon;
    double total = 0.0;
    for (int g = 0; g < mdp.n_goals; ++g) {
        if (mdp.goal_dist[g] == 0.0)
            continue;
        double jg = 0.0;
        for_each_trajectory(mdp, pi, g,
                            [&](const std::vector<int>& states,
                                const std::vector<int>&, double prob) {
                                double ret = 0.0;
                                double disc = 1.0;
                                for (int t = 0; t < T; ++t) {
                                    if (mdp.phi[states[t]] == g)
                                        ret += disc;
                                    disc *= mdp.gamma;
                                }
                                jg += prob * ret;
                            });
        total += mdp.goal_dist[g] * jg;
    }
    return total;
}

double exact_J_surr(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                    const TabularPolicy& pi_b) {
    mdp.validate();
    check_enum_caps(mdp);
    if (!pi.strictly_positive())
        throw std::invalid_argument("exact_J_surr: pi has zero-probability actions");
    const int T = mdp.horizon;
    std::vector<double> suffix(T + 1);
    double total = 0.0;
    for (int g = 0; g < mdp.n_goals; ++g) {
        if (mdp.goal_dist[g] == 0.0)
            continue;
        double jg = 0.0;
        for_each_trajectory(
            mdp, pi_b, g,
            [&](const std::vector<int>& states, const std::vector<int>& actions,
                double prob) {
                // suffix[t] = sum_{i>=t} gamma^i * 1[phi(s_i)=g] (0-based i)
                suffix[T] = 0.0;
                double disc = std::pow(mdp.gamma, T - 1);
                for (int t = T - 1; t >= 0; --t) {
                    suffix[t] =
                        suffix[t + 1] + (mdp.phi[states[t]] == g ? disc : 0.0);
                    disc /= mdp.gamma;
                }
                double inner = 0.0;
                for (int t = 0; t < T; ++t)
                    inner += std::log(pi.at(states[t], g, actions[t])) * suffix[t];
                jg += prob * inner;
            });
        total += mdp.goal_dist[g] * jg;
    }
    return total / static_cast<double>(T);
}

double exact_J_wgcsl(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                     const TabularPolicy& pi_b, const WeightFn& weight) {
    mdp.validate();
    check_enum_caps(mdp);
    if (!pi.strictly_positive())
        throw std::invalid_argument("exact_J_wgcsl: pi has zero-probability actions");
    const int T = mdp.horizon;
    double total = 0.0;
    for (int g = 0; g < mdp.n_goals; ++g) {
        if (mdp.goal_dist[g] == 0.0)
            continue;
        double jg = 0.0;
        for_each_trajectory(
            mdp, pi_b, g,
            [&](const std::vector<int>& states, const std::vector<int>& actions,
                double prob) {
                double outer = 0.0;
                for (int t = 0; t < T; ++t) {
                    double inner = 0.0;
                    for (int i = t; i < T; ++i) {
                        const int goal_i = mdp.phi[states[i]];
                        inner += weight(t, i, states[t], actions[t], goal_i) *
                                 std::log(pi.at(states[t], goal_i, actions[t]));
                    }
                    outer += inner / static_cast<double>(T - t);
                }
                jg += prob * outer / static_cast<double>(T);
            });
        total += mdp.goal_dist[g] * jg;
    }
    return total;
}

double exact_J_gcsl(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                    const TabularPolicy& pi_b) {
    return exact_J_wgcsl(mdp, pi, pi_b,
                         [](int, int, int, int, int) { return 1.0; });
}

Theorem1Report check_theorem1(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                              const TabularPolicy& pi_b, double tol) {
    Theorem1Report rep;
    rep.j_surr = exact_J_surr(mdp, pi, pi_b);
    const double gamma = mdp.gamma;
    rep.t_j_wgcsl =
        mdp.horizon * exact_J_wgcsl(mdp, pi, pi_b,
                                    [gamma](int t, int i, int, int, int) {
                                        return std::pow(gamma, i - t);
                                    });
    rep.t_j_gcsl = mdp.horizon * exact_J_gcsl(mdp, pi, pi_b);
    rep.holds = rep.j_surr >= rep.t_j_wgcsl - tol &&
                rep.t_j_wgcsl >= rep.t_j_gcsl - tol;
    return rep;
}

CheckReport check_corollary1(const DiscreteGCMDP& mdp, const TabularPolicy& pi,
                             const TabularPolicy& pi_b,
                             const std::vector<double>& h, double tol) {
    if (h.size() != static_cast<std::size_t>(mdp.n_states) * mdp.n_actions *
                        mdp.n_goals)
        throw std::invalid_argument("check_corollary1: h shape mismatch");
    for (const double v : h)
        if (v < 1.0)
            throw std::invalid_argument("check_corollary1: h must be >= 1");
    const double gamma = mdp.gamma;
    const int na = mdp.n_actions, ng = mdp.n_goals;
    const double j_surr = exact_J_surr(mdp, pi, pi_b);
    const double t_j_wgcsl =
        mdp.horizon *
        exact_J_wgcsl(mdp, pi, pi_b, [&](int t, int i, int s, int a, int g) {
            return std::pow(gamma, i - t) *
                   h[(static_cast<std::size_t>(s) * na + a) * ng + g];
        });
    CheckReport rep;
    rep.max_violation = std::max(0.0, t_j_wgcsl - j_surr);
    rep.holds = j_surr >= t_j_wgcsl - tol;
    return rep;
}

namespace {

double rel_scale_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    // Central differences on O(1) objectives carry ~1e-10 noise; gradients
    // below this scale are numerically zero (e.g. horizon-1 instances).
    constexpr double kNoiseFloor = 1e-8;
    if (scale <= kNoiseFloor)
        return 0.0;
    return diff / scale;
}

} // namespace

double grad_match_at(const DiscreteGCMDP& mdp,
                     const std::vector<double>& logits_pi,
                     const std::vector<double>& logits_b, double fd_step) {
    mdp.validate();
    const int s = mdp.n_states, g = mdp.n_goals, a = mdp.n_actions;
    const TabularPolicy pi_b = TabularPolicy::from_logits(s, g, a, logits_b);
    const std::size_t n = logits_pi.size();
    std::vector<double> theta = logits_pi;
    std::vector<double> grad_j(n), grad_surr(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double keep = theta[i];
        theta[i] = keep + fd_step;
        const TabularPolicy pi_hi = TabularPolicy::from_logits(s, g, a, theta);
        const double j_hi = exact_J(mdp, pi_hi);
        const double s_hi = exact_J_surr(mdp, pi_hi, pi_b);
        theta[i] = keep - fd_step;
        const TabularPolicy pi_lo = TabularPolicy::from_logits(s, g, a, theta);
        const double j_lo = exact_J(mdp, pi_lo);
        const double s_lo = exact_J_surr(mdp, pi_lo, pi_b);
        theta[i] = keep;
        grad_j[i] = (j_hi - j_lo) / (2.0 * fd_step);
        grad_surr[i] = mdp.horizon * (s_hi - s_lo) / (2.0 * fd_step);
    }
    return rel_scale_diff(grad_j, grad_surr);
}

double grad_match(const DiscreteGCMDP& mdp, const std::vector<double>& logits_b,
                  double fd_step) {
    return grad_match_at(mdp, logits_b, logits_b, fd_step);
}

namespace {

// Time-indexed policy evaluation; pi_at(t, s, g, a) gives action probabilities.
std::vector<double>
eval_time_indexed(const DiscreteGCMDP& mdp,
                  const std::function<double(int, int, int, int)>& pi_at) {
    const int T = mdp.horizon, S = mdp.n_states, G = mdp.n_goals,
              A = mdp.n_actions;
    std::vector<double> v(static_cast<std::size_t>(T) * S * G, 0.0);
    auto V = [&](int t, int s, int g) -> double& {
        return v[(static_cast<std::size_t>(t) * S + s) * G + g];
    };
    for (int t = T - 1; t >= 0; --t)
        for (int s = 0; s < S; ++s)
            for (int g = 0; g < G; ++g) {
                double val = mdp.phi[s] == g ? 1.0 : 0.0;
                if (t + 1 < T) {
                    double cont = 0.0;
                    for (int a = 0; a < A; ++a) {
                        const double pa = pi_at(t, s, g, a);
                        if (pa == 0.0)
                            continue;
                        double exp_next = 0.0;
                        for (int s2 = 0; s2 < S; ++s2)
                            exp_next += mdp.p(s, a, s2) * V(t + 1, s2, g);
                        cont += pa * exp_next;
                    }
                    val += mdp.gamma * cont;
                }
                V(t, s, g) = val;
            }
    return v;
}

// Percentile with linear interpolation over a small action set.
double percentile_small(std::vector<double> vals, double pct) {
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    if (n == 1)
        return vals[0];
    const double idx = (pct / 100.0) * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const double frac = idx - static_cast<double>(lo);
    if (frac <= 0.0 || lo + 1 >= n)
        return vals[lo];
    return vals[lo] + frac * (vals[lo + 1] - vals[lo]);
}

} // namespace

std::vector<double> exact_policy_eval(const DiscreteGCMDP& mdp,
                                      const TabularPolicy& pi) {
    mdp.validate();
    return eval_time_indexed(
        mdp, [&](int, int s, int g, int a) { return pi.at(s, g, a); });
}

CheckReport check_prop1(const DiscreteGCMDP& mdp,
                        const TabularPolicy& pi_relabel, const Prop1Config& cfg,
                        double tol) {
    mdp.validate();
    if (!pi_relabel.strictly_positive())
        throw std::invalid_argument("check_prop1: policy must be strictly positive");
    const int T = mdp.horizon, S = mdp.n_states, G = mdp.n_goals,
              A = mdp.n_actions;
    const std::vector<double> v = exact_policy_eval(mdp, pi_relabel);
    auto V = [&](int t, int s, int g) {
        return t < T ? v[(static_cast<std::size_t>(t) * S + s) * G + g] : 0.0;
    };

    // Reweighted policy per (t, s, g): pi * clip(exp A, 0, M) * gate(A).
    std::vector<double> tilde(static_cast<std::size_t>(T) * S * G * A, 0.0);
    auto Tl = [&](int t, int s, int g, int a) -> double& {
        return tilde[((static_cast<std::size_t>(t) * S + s) * G + g) * A + a];
    };
    std::vector<double> adv(A);
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < S; ++s)
            for (int g = 0; g < G; ++g) {
                const double r = mdp.phi[s] == g ? 1.0 : 0.0;
                for (int a = 0; a < A; ++a) {
                    double exp_next = 0.0;
                    for (int s2 = 0; s2 < S; ++s2)
                        exp_next += mdp.p(s, a, s2) * V(t + 1, s2, g);
                    const double q = r + mdp.gamma * exp_next;
                    adv[a] = q - V(t, s, g);
                }
                const double ahat =
                    percentile_small(std::vector<double>(adv.begin(), adv.end()),
                                     cfg.percentile);
                double norm = 0.0;
                for (int a = 0; a < A; ++a) {
                    const double geaw =
                        std::min(std::exp(std::min(adv[a], 700.0)), cfg.clip_bound);
                    const double gate = adv[a] > ahat ? 1.0 : cfg.eps_min;
                    const double w = pi_relabel.at(s, g, a) * geaw * gate;
                    Tl(t, s, g, a) = w;
                    norm += w;
                }
                for (int a = 0; a < A; ++a)
                    Tl(t, s, g, a) /= norm;
            }

    const std::vector<double> v_tilde = eval_time_indexed(
        mdp, [&](int t, int s, int g, int a) { return Tl(t, s, g, a); });

    CheckReport rep;
    rep.holds = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double gap = v[i] - v_tilde[i];
        rep.max_violation = std::max(rep.max_violation, gap);
        if (gap > tol)
            rep.holds = false;
    }
    return rep;
}

namespace {

struct RolledTrajectory {
    int goal = 0;
    std::vector<int> states;
    std::vector<int> actions;
};

int sample_index(std::span<const double> dist, rng::Engine& eng) {
    const double u = rng::uniform01(eng);
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        if (u < acc)
            return static_cast<int>(i);
    }
    return static_cast<int>(dist.size()) - 1;
}

} // namespace

Prop2Report check_prop2(const DiscreteGCMDP& mdp, const TabularPolicy& pi_b,
                        int n_traj, std::uint64_t seed, double tol) {
    mdp.validate();
    Prop2Report rep;

    // Deterministic transitions are part of the statement's assumptions.
    const int S = mdp.n_states, A = mdp.n_actions, G = mdp.n_goals,
              T = mdp.horizon;
    std::vector<int> next(static_cast<std::size_t>(S) * A, -1);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            for (int s2 = 0; s2 < S; ++s2) {
                const double p = mdp.p(s, a, s2);
                if (p > 1.0 - kDistTol)
                    next[static_cast<std::size_t>(s) * A + a] = s2;
                else if (p > kDistTol) {
                    rep.note = "stochastic transitions";
                    return rep;
                }
            }
        }

    rng::Engine eng(seed);
    std::vector<RolledTrajectory> data(static_cast<std::size_t>(n_traj));
    for (auto& traj : data) {
        traj.goal = sample_index(mdp.goal_dist, eng);
        traj.states.resize(T);
        traj.actions.resize(T);
        traj.states[0] = sample_index(mdp.init_dist, eng);
        for (int t = 0; t < T; ++t) {
            const int s = traj.states[t];
            std::vector<double> row(A);
            for (int a = 0; a < A; ++a)
                row[a] = pi_b.at(s, traj.goal, a);
            traj.actions[t] = sample_index(row, eng);
            if (t + 1 < T)
                traj.states[t + 1] =
                    next[static_cast<std::size_t>(s) * A + traj.actions[t]];
        }
    }

    // Discounted future return of a suffix against a goal (current-state reward).
    auto suffix_return = [&](const RolledTrajectory& traj, int t, int g) {
        double ret = 0.0, disc = 1.0;
        for (int j = t; j < T; ++j) {
            if (mdp.phi[traj.states[j]] == g)
                ret += disc;
            disc *= mdp.gamma;
        }
        return ret;
    };

    // Relabeled suffix set: per (trajectory, t) either the original goal (kept)
    // or an accepted future achieved goal.
    struct Suffix {
        const RolledTrajectory* traj;
        int t0;
        int goal;
    };
    std::vector<Suffix> relabeled;
    relabeled.reserve(static_cast<std::size_t>(n_traj) * T);
    for (const auto& traj : data) {
        for (int t = 0; t < T; ++t) {
            bool future_success = false;
            for (int i = t; i < T && !future_success; ++i)
                future_success = mdp.phi[traj.states[i]] == traj.goal;
            if (future_success) {
                relabeled.push_back({&traj, t, traj.goal});
                continue;
            }
            const int i = static_cast<int>(rng::uniform_int(eng, t, T - 1));
            const int cand = mdp.phi[traj.states[i]];
            // Best original suffix return at the same (t, s with that goal.
            double best = -1.0;
            for (const auto& other : data) {
                if (other.goal != cand || other.states[t] != traj.states[t])
                    continue;
                best = std::max(best, suffix_return(other, t, cand));
            }
            if (best < 0.0 || suffix_return(traj, t, cand) > best)
                relabeled.push_back({&traj, t, cand});
            else
                relabeled.push_back({&traj, t, traj.goal});
        }
    }

    // Empirical time-indexed conditional policies.
    std::vector<double> count_b(static_cast<std::size_t>(T) * S * G * A, 0.0);
    std::vector<double> count_rel(count_b.size(), 0.0);
    auto idx = [&](int t, int s, int g, int a) {
        return ((static_cast<std::size_t>(t) * S + s) * G + g) * A + a;
    };
    std::vector<bool> present(static_cast<std::size_t>(T) * S * G, false);
    for (const auto& traj : data)
        for (int t = 0; t < T; ++t) {
            count_b[idx(t, traj.states[t], traj.goal, traj.actions[t])] += 1.0;
            present[(static_cast<std::size_t>(t) * S + traj.states[t]) * G +
                    traj.goal] = true;
        }
    for (const auto& suf : relabeled)
        for (int j = suf.t0; j < T; ++j)
            count_rel[idx(j, suf.traj->states[j], suf.goal,
                          suf.traj->actions[j])] += 1.0;

    // Exact values of the empirical policies under the true dynamics, with
    // undefined conditionals poisoning any cell that needs them.
    const double kUndef = std::numeric_limits<double>::quiet_NaN();
    auto eval_empirical = [&](const std::vector<double>& counts) {
        std::vector<double> v(static_cast<std::size_t>(T) * S * G, kUndef);
        auto V = [&](int t, int s, int g) -> double& {
            return v[(static_cast<std::size_t>(t) * S + s) * G + g];
        };
        for (int t = T - 1; t >= 0; --t)
            for (int s = 0; s < S; ++s)
                for (int g = 0; g < G; ++g) {
                    const double r = mdp.phi[s] == g ? 1.0 : 0.0;
                    if (t == T - 1) {
                        V(t, s, g) = r; // continuation is zero, policy unneeded
                        continue;
                    }
                    double total = 0.0;
                    for (int a = 0; a < A; ++a)
                        total += counts[idx(t, s, g, a)];
                    if (total == 0.0)
                        continue; // stays undefined
                    double cont = 0.0;
                    bool ok = true;
                    for (int a = 0; a < A && ok; ++a) {
                        const double c = counts[idx(t, s, g, a)];
                        if (c == 0.0)
                            continue;
                        const double vn =
                            V(t + 1, next[static_cast<std::size_t>(s) * A + a], g);
                        if (std::isnan(vn))
                            ok = false;
                        else
                            cont += (c / total) * vn;
                    }
                    if (ok)
                        V(t, s, g) = r + mdp.gamma * cont;
                }
        return v;
    };

    const std::vector<double> v_b = eval_empirical(count_b);
    const std::vector<double> v_rel = eval_empirical(count_rel);

    rep.applicable = true;
    rep.holds = true;
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < S; ++s)
            for (int g = 0; g < G; ++g) {
                const std::size_t cell = (static_cast<std::size_t>(t) * S + s) * G + g;
                if (!present[cell])
                    continue;
                if (std::isnan(v_b[cell]) || std::isnan(v_rel[cell])) {
                    rep.applicable = false;
                    rep.holds = false;
                    rep.note = "insufficient coverage of a dataset (t,s,g)";
                    return rep;
                }
                const double gap = v_b[cell] - v_rel[cell];
                rep.max_violation = std::max(rep.max_violation, gap);
                rep.max_improvement = std::max(rep.max_improvement, -gap);
                if (gap > tol)
                    rep.holds = false;
            }
    return rep;
}

std::vector<Prop2Fixture> prop2_fixtures() {
    // Three states on a line, phi = identity. Action 0 ("fast") jumps toward
    // state 2, action 1 ("slow") advances one step at most.
    auto base_mdp = [] {
        DiscreteGCMDP mdp;
        mdp.n_states = 3;
        mdp.n_actions = 2;
        mdp.n_goals = 3;
        mdp.horizon = 3;
        mdp.gamma = 0.9;
        mdp.phi = {0, 1, 2};
        mdp.init_dist = {1.0, 0.0, 0.0};
        mdp.goal_dist = {0.0, 0.5, 0.5};
        mdp.transition.assign(3 * 2 * 3, 0.0);
        auto set = [&](int s, int a, int s2) {
            mdp.transition[(static_cast<std::size_t>(s) * 2 + a) * 3 + s2] = 1.0;
        };
        set(0, 0, 2); // fast
        set(1, 0, 2);
        set(2, 0, 2);
        set(0, 1, 1); // slow
        set(1, 1, 1);
        set(2, 1, 1); // slow recovers from 2 back to 1
        return mdp;
    };

    auto base_policy = [](bool mixed_at_start) {
        TabularPolicy pi = TabularPolicy::uniform(3, 3, 2);
        auto det = [&](int s, int g, int a) {
            pi.at(s, g, 0) = a == 0 ? 1.0 : 0.0;
            pi.at(s, g, 1) = a == 1 ? 1.0 : 0.0;
        };
        // Goal 1: slow reaches it; the mixed variant sometimes takes the fast
        // action and from state 2 either recovers (slow) or stays stuck.
        if (mixed_at_start) {
            pi.at(0, 1, 0) = 0.5;
            pi.at(0, 1, 1) = 0.5;
            pi.at(2, 1, 0) = 0.5;
            pi.at(2, 1, 1) = 0.5;
        } else {
            det(0, 1, 1);
            det(2, 1, 0);
        }
        det(1, 1, 1);
        // Goal 2: the slow route from the start, then fast.
        det(0, 2, 1);
        det(1, 2, 0);
        det(2, 2, 0);
        return pi;
    };

    std::vector<Prop2Fixture> fixtures;
    fixtures.push_back({"all_success", base_mdp(), base_policy(false), true});
    fixtures.push_back({"improvement", base_mdp(), base_policy(true), true});

    Prop2Fixture stochastic{"stochastic", base_mdp(), base_policy(false), false};
    // Make one row genuinely random to violate the deterministic assumption.
    stochastic.mdp.transition[(0 * 2 + 0) * 3 + 2] = 0.5;
    stochastic.mdp.transition[(0 * 2 + 0) * 3 + 1] = 0.5;
    fixtures.push_back(std::move(stochastic));
    return fixtures;
}

DiscreteGCMDP random_mdp(rng::Engine& eng, int max_states, int max_actions,
                         int max_goals, int max_horizon,
                         std::span<const double> gammas) {
    DiscreteGCMDP mdp;
    mdp.n_states = static_cast<int>(rng::uniform_int(eng, 2, max_states));
    mdp.n_actions = static_cast<int>(rng::uniform_int(eng, 2, max_actions));
    mdp.n_goals = static_cast<int>(rng::uniform_int(eng, 2, max_goals));
    mdp.horizon = static_cast<int>(rng::uniform_int(eng, 1, max_horizon));
    mdp.gamma = gammas[static_cast<std::size_t>(
        rng::uniform_int(eng, 0, static_cast<std::int64_t>(gammas.size()) - 1))];

    auto dirichlet = [&](int n, std::vector<double>& out, std::size_t off) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = -std::log(1.0 - rng::uniform01(eng));
            out[off + i] = e;
            sum += e;
        }
        for (int i = 0; i < n; ++i)
            out[off + i] /= sum;
    };

    mdp.transition.resize(static_cast<std::size_t>(mdp.n_states) *
                          mdp.n_actions * mdp.n_states);
    for (int s = 0; s < mdp.n_states; ++s)
        for (int a = 0; a < mdp.n_actions; ++a)
            dirichlet(mdp.n_states, mdp.transition,
                      (static_cast<std::size_t>(s) * mdp.n_actions + a) *
                          mdp.n_states);
    mdp.phi.resize(mdp.n_states);
    for (int s = 0; s < mdp.n_states; ++s)
        mdp.phi[s] =
            static_cast<int>(rng::uniform_int(eng, 0, mdp.n_goals - 1));
    mdp.init_dist.resize(mdp.n_states);
    dirichlet(mdp.n_states, mdp.init_dist, 0);
    mdp.goal_dist.resize(mdp.n_goals);
    dirichlet(mdp.n_goals, mdp.goal_dist, 0);
    return mdp;
}

TabularPolicy random_policy(const DiscreteGCMDP& mdp, rng::Engine& eng) {
    TabularPolicy pi;
    pi.n_states = mdp.n_states;
    pi.n_goals = mdp.n_goals;
    pi.n_actions = mdp.n_actions;
    pi.prob.resize(static_cast<std::size_t>(mdp.n_states) * mdp.n_goals *
                   mdp.n_actions);
    for (int i = 0; i < mdp.n_states * mdp.n_goals; ++i) {
        double sum = 0.0;
        for (int a = 0; a < mdp.n_actions; ++a) {
            const double e = -std::log(1.0 - rng::uniform01(eng));
            pi.prob[static_cast<std::size_t>(i) * mdp.n_actions + a] = e;
            sum += e;
        }
        for (int a = 0; a < mdp.n_actions; ++a)
            pi.prob[static_cast<std::size_t>(i) * mdp.n_actions + a] /= sum;
    }
    return pi;
}

} // namespace ogcb::theory
