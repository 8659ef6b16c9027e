#pragma once

#include <cstddef>
#include <tuple>
#include <vector>

#include "ecosim/nervous.hpp"
#include "ecosim/rng.hpp"

namespace ecosim {

// Trainable policy network: tanh MLP trunk shared by an action-logits head and
// a scalar value head. Parameters live in one flat vector so the optimizer,
// checkpoints, and finite-difference checks all see the same layout.
class ActorCritic {
public:
    ActorCritic() = default;
    ActorCritic(int n_inputs, const std::vector<int>& hidden, int n_actions, Rng& init_rng);

    int n_inputs() const { return n_in_; }
    int n_actions() const { return n_act_; }
    const std::vector<int>& hidden_sizes() const { return hidden_; }

    // Fixed (untrained) per-entry input scaling applied before the first layer.
    std::vector<double> input_scale;

    void forward(const Observation& x, std::vector<double>& logits, double& value) const;

    // Forward pass retaining activations for backprop. The workspace can be
    // reused across calls; it holds no pointers into the network.
    struct Workspace {
        std::vector<std::vector<double>> acts;  // acts[0] = scaled input, then post-tanh
        std::vector<double> logits;
        double value = 0.0;
        std::vector<std::vector<double>> deltas;  // scratch, sized like acts
    };
    void forward_cached(const Observation& x, Workspace& ws) const;

    // Accumulates d(loss)/d(params) into grad (size param_count()) given
    // gradients at the two heads for the sample cached in ws.
    void backward(const Workspace& ws, const std::vector<double>& dlogits, double dvalue,
                  std::vector<double>& grad) const;

    size_t param_count() const { return params_.size(); }
    const std::vector<double>& params() const { return params_; }
    std::vector<double>& params() { return params_; }

    // [n_inputs, hidden..., n_actions, 1] — the declared layer order used by
    // the checkpoint format.
    std::vector<int> layer_sizes() const;

private:
    struct LayerView {
        int in = 0;
        int out = 0;
        size_t w_off = 0;  // row-major out x in
        size_t b_off = 0;
    };

    void linear_forward(const LayerView& l, const std::vector<double>& in,
                        std::vector<double>& out) const;

    int n_in_ = 0;
    int n_act_ = 0;
    std::vector<int> hidden_;
    std::vector<LayerView> trunk_;
    LayerView policy_head_;
    LayerView value_head_;
    std::vector<double> params_;
};

// Numerically stable log-softmax; out.size() == logits.size().
void log_softmax(const std::vector<double>& logits, std::vector<double>& out);

// Samples an action from softmax(logits) with the supplied rng, or takes the
// argmax in greedy mode. Returns (action, log_prob, value).
std::tuple<int, double, double> policy_select(const ActorCritic& net, const Observation& x,
                                              Rng& rng, bool greedy = false);

// First-order optimizer with adaptive moments, state aligned to the flat
// parameter vector.
class Adam {
public:
    Adam() = default;
    Adam(size_t n_params, double lr) : lr_(lr), m_(n_params, 0.0), v_(n_params, 0.0) {}

    void step(std::vector<double>& params, const std::vector<double>& grad);
    double learning_rate() const { return lr_; }

private:
    double lr_ = 3e-4;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
    long t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

}  // namespace ecosim
