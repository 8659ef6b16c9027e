#include "ecosim/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecosim {

ActorCritic::ActorCritic(int n_inputs, const std::vector<int>& hidden, int n_actions,
                         Rng& init_rng)
    : n_in_(n_inputs), n_act_(n_actions), hidden_(hidden) {
    if (n_inputs <= 0 || n_actions <= 0) throw std::invalid_argument("ActorCritic: bad dimensions");
    input_scale.assign(n_inputs, 1.0);

    size_t offset = 0;
    auto make_layer = [&offset](int in, int out) {
        LayerView l;
        l.in = in;
        l.out = out;
        l.w_off = offset;
        offset += static_cast<size_t>(in) * out;
        l.b_off = offset;
        offset += out;
        return l;
    };

    int prev = n_inputs;
    for (int h : hidden) {
        if (h <= 0) throw std::invalid_argument("ActorCritic: bad hidden size");
        trunk_.push_back(make_layer(prev, h));
        prev = h;
    }
    policy_head_ = make_layer(prev, n_actions);
    value_head_ = make_layer(prev, 1);
    params_.assign(offset, 0.0);

    // Xavier-uniform trunk, near-zero policy head so the initial policy is
    // close to uniform, small value head.
    auto init_layer = [this, &init_rng](const LayerView& l, double gain) {
        const double s = gain * std::sqrt(6.0 / (l.in + l.out));
        for (size_t i = 0; i < static_cast<size_t>(l.in) * l.out; ++i)
            params_[l.w_off + i] = init_rng.uniform(-s, s);
        for (int i = 0; i < l.out; ++i) params_[l.b_off + i] = 0.0;
    };
    for (const auto& l : trunk_) init_layer(l, 1.0);
    init_layer(policy_head_, 0.01);
    init_layer(value_head_, 0.1);
}

std::vector<int> ActorCritic::layer_sizes() const {
    std::vector<int> sizes{n_in_};
    for (int h : hidden_) sizes.push_back(h);
    sizes.push_back(n_act_);
    sizes.push_back(1);
    return sizes;
}

void ActorCritic::linear_forward(const LayerView& l, const std::vector<double>& in,
                                 std::vector<double>& out) const {
    out.resize(l.out);
    const double* w = params_.data() + l.w_off;
    const double* b = params_.data() + l.b_off;
    for (int o = 0; o < l.out; ++o) {
        double acc = b[o];
        const double* row = w + static_cast<size_t>(o) * l.in;
        for (int i = 0; i < l.in; ++i) acc += row[i] * in[i];
        out[o] = acc;
    }
}

void ActorCritic::forward_cached(const Observation& x, Workspace& ws) const {
    if (static_cast<int>(x.size()) != n_in_)
        throw std::invalid_argument("ActorCritic: observation dimension mismatch");
    const size_t n_acts = trunk_.size() + 1;
    ws.acts.resize(n_acts);
    ws.deltas.resize(n_acts);

    ws.acts[0].resize(n_in_);
    for (int i = 0; i < n_in_; ++i) ws.acts[0][i] = x[i] * input_scale[i];

    for (size_t t = 0; t < trunk_.size(); ++t) {
        linear_forward(trunk_[t], ws.acts[t], ws.acts[t + 1]);
        for (double& v : ws.acts[t + 1]) v = std::tanh(v);
    }
    linear_forward(policy_head_, ws.acts.back(), ws.logits);
    std::vector<double> value_out;
    linear_forward(value_head_, ws.acts.back(), value_out);
    ws.value = value_out[0];
}

void ActorCritic::forward(const Observation& x, std::vector<double>& logits, double& value) const {
    thread_local Workspace ws;
    forward_cached(x, ws);
    logits = ws.logits;
    value = ws.value;
}

void ActorCritic::backward(const Workspace& ws, const std::vector<double>& dlogits, double dvalue,
                           std::vector<double>& grad) const {
    if (grad.size() != params_.size()) throw std::invalid_argument("ActorCritic: grad size mismatch");
    if (static_cast<int>(dlogits.size()) != n_act_)
        throw std::invalid_argument("ActorCritic: dlogits size mismatch");

    auto& deltas = const_cast<Workspace&>(ws).deltas;
    const size_t last = trunk_.size();
    deltas[last].assign(ws.acts[last].size(), 0.0);

    // Heads: accumulate parameter grads and the delta flowing into the trunk.
    auto head_backward = [&](const LayerView& l, const double* dout) {
        double* gw = grad.data() + l.w_off;
        double* gb = grad.data() + l.b_off;
        const double* w = params_.data() + l.w_off;
        const std::vector<double>& a = ws.acts[last];
        for (int o = 0; o < l.out; ++o) {
            const double d = dout[o];
            if (d == 0.0) continue;
            gb[o] += d;
            double* gr = gw + static_cast<size_t>(o) * l.in;
            const double* wr = w + static_cast<size_t>(o) * l.in;
            for (int i = 0; i < l.in; ++i) {
                gr[i] += d * a[i];
                deltas[last][i] += d * wr[i];
            }
        }
    };
    head_backward(policy_head_, dlogits.data());
    head_backward(value_head_, &dvalue);

    // Trunk, in reverse: delta through tanh, then through the linear layer.
    for (size_t t = trunk_.size(); t-- > 0;) {
        const LayerView& l = trunk_[t];
        std::vector<double>& dpost = deltas[t + 1];
        const std::vector<double>& post = ws.acts[t + 1];
        for (int o = 0; o < l.out; ++o) dpost[o] *= (1.0 - post[o] * post[o]);

        deltas[t].assign(ws.acts[t].size(), 0.0);
        double* gw = grad.data() + l.w_off;
        double* gb = grad.data() + l.b_off;
        const double* w = params_.data() + l.w_off;
        const std::vector<double>& a = ws.acts[t];
        for (int o = 0; o < l.out; ++o) {
            const double d = dpost[o];
            gb[o] += d;
            double* gr = gw + static_cast<size_t>(o) * l.in;
            const double* wr = w + static_cast<size_t>(o) * l.in;
            for (int i = 0; i < l.in; ++i) {
                gr[i] += d * a[i];
                deltas[t][i] += d * wr[i];
            }
        }
    }
}

void log_softmax(const std::vector<double>& logits, std::vector<double>& out) {
    out.resize(logits.size());
    double max_logit = -1e300;
    for (double l : logits) max_logit = std::max(max_logit, l);
    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) sum += std::exp(logits[i] - max_logit);
    const double log_z = max_logit + std::log(sum);
    for (size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - log_z;
}

std::tuple<int, double, double> policy_select(const ActorCritic& net, const Observation& x,
                                              Rng& rng, bool greedy) {
    thread_local std::vector<double> logits;
    thread_local std::vector<double> logp;
    double value = 0.0;
    net.forward(x, logits, value);
    for (double l : logits) {
        if (!std::isfinite(l)) throw std::runtime_error("policy_select: non-finite logits");
    }
    log_softmax(logits, logp);

    int action = 0;
    if (greedy) {
        for (size_t i = 1; i < logits.size(); ++i)
            if (logits[i] > logits[action]) action = static_cast<int>(i);
    } else {
        const double u = rng.uniform();
        double cum = 0.0;
        action = static_cast<int>(logits.size()) - 1;
        for (size_t i = 0; i < logp.size(); ++i) {
            cum += std::exp(logp[i]);
            if (u < cum) {
                action = static_cast<int>(i);
                break;
            }
        }
    }
    return {action, logp[action], value};
}

void Adam::step(std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw std::invalid_argument("Adam: size mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
        const double m_hat = m_[i] / bc1;
        const double v_hat = v_[i] / bc2;
        params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
}

}  // namespace ecosim
