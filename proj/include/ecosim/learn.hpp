#pragma once

#include <vector>

#include "ecosim/mlp.hpp"
#include "ecosim/nervous.hpp"
#include "ecosim/rng.hpp"

namespace ecosim {

// Reward signal: happiness difference between consecutive ticks.
inline double reward_from_happiness(double h_now, double h_prev) { return h_now - h_prev; }

struct Transition {
    Observation obs;
    int action = 0;
    double log_prob = 0.0;
    double value = 0.0;
    double reward = 0.0;
    bool done = false;
};

// Per-organism (or pooled per-species during pretraining) transition storage.
// Flushed to the learner exactly when full or on done; empty afterwards.
struct RolloutBuffer {
    std::vector<Transition> transitions;
    size_t capacity = 256;
    double last_happiness = 0.0;
    bool has_last_happiness = false;

    bool full() const { return transitions.size() >= capacity; }
    void clear() { transitions.clear(); }
};

struct PPOConfig {
    double gamma = 0.99;
    double lambda = 0.95;
    double clip_eps = 0.2;
    int epochs = 4;
    int minibatch = 64;
    double lr = 3e-4;
    double entropy_coef = 0.01;
    double value_coef = 0.5;
    double max_grad_norm = 0.5;
};

// GAE: delta_t = r_t + gamma*v_{t+1}*(1-done_t) - v_t;
// A_t = delta_t + gamma*lambda*(1-done_t)*A_{t+1}; returns_t = A_t + v_t.
// bootstrap_value stands in for v_T when the last transition is not done.
void compute_gae(const std::vector<Transition>& transitions, double bootstrap_value,
                 const PPOConfig& cfg, std::vector<double>& advantages,
                 std::vector<double>& returns);

// Flat training batch handed to ppo_update. Advantages are expected to be
// normalized (mean 0, std 1) by the caller.
struct Batch {
    std::vector<Observation> obs;
    std::vector<int> actions;
    std::vector<double> old_log_probs;
    std::vector<double> advantages;
    std::vector<double> returns;

    size_t size() const { return obs.size(); }
};

void normalize_advantages(std::vector<double>& advantages);

struct PPOStats {
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
    double approx_kl = 0.0;
    bool aborted_non_finite = false;
    int minibatches = 0;
};

// Mean PPO loss and its parameter gradient over one minibatch (indices into
// the batch). Exposed separately so the finite-difference oracle can check the
// gradient of exactly the loss the optimizer sees.
double ppo_loss_and_grad(const ActorCritic& net, const Batch& batch,
                         const std::vector<int>& indices, const PPOConfig& cfg,
                         std::vector<double>& grad, PPOStats* stats = nullptr);

// Clipped-surrogate update: cfg.epochs passes over shuffled minibatches with
// gradient-norm clipping and an adaptive-moment step. A non-finite loss aborts
// the update and restores the previous parameters.
PPOStats ppo_update(ActorCritic& net, Adam& opt, const Batch& batch, const PPOConfig& cfg,
                    Rng& rng);

}  // namespace ecosim
