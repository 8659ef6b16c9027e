#include "ecosim/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecosim {

void compute_gae(const std::vector<Transition>& transitions, double bootstrap_value,
                 const PPOConfig& cfg, std::vector<double>& advantages,
                 std::vector<double>& returns) {
    if (transitions.empty()) throw std::invalid_argument("compute_gae: empty buffer");
    const size_t n = transitions.size();
    advantages.assign(n, 0.0);
    returns.assign(n, 0.0);

    double next_advantage = 0.0;
    double next_value = bootstrap_value;
    for (size_t i = n; i-- > 0;) {
        const Transition& t = transitions[i];
        const double not_done = t.done ? 0.0 : 1.0;
        const double delta = t.reward + cfg.gamma * next_value * not_done - t.value;
        const double adv = delta + cfg.gamma * cfg.lambda * not_done * next_advantage;
        advantages[i] = adv;
        returns[i] = adv + t.value;
        next_advantage = adv;
        next_value = t.value;
    }
}

void normalize_advantages(std::vector<double>& advantages) {
    if (advantages.empty()) return;
    const double n = static_cast<double>(advantages.size());
    double mean = 0.0;
    for (double a : advantages) mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double stddev = std::sqrt(var / n);
    for (double& a : advantages) a = (a - mean) / (stddev + 1e-8);
}

double ppo_loss_and_grad(const ActorCritic& net, const Batch& batch,
                         const std::vector<int>& indices, const PPOConfig& cfg,
                         std::vector<double>& grad, PPOStats* stats) {
    if (indices.empty()) throw std::invalid_argument("ppo_loss_and_grad: empty minibatch");
    grad.assign(net.param_count(), 0.0);

    const double inv_n = 1.0 / static_cast<double>(indices.size());
    const int n_actions = net.n_actions();

    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy_sum = 0.0;
    double kl_sum = 0.0;

    ActorCritic::Workspace ws;
    std::vector<double> logp(n_actions);
    std::vector<double> probs(n_actions);
    std::vector<double> dlogits(n_actions);

    for (int idx : indices) {
        const Observation& x = batch.obs[idx];
        const int action = batch.actions[idx];
        const double advantage = batch.advantages[idx];
        const double ret = batch.returns[idx];
        const double old_logp = batch.old_log_probs[idx];

        net.forward_cached(x, ws);
        log_softmax(ws.logits, logp);
        for (int a = 0; a < n_actions; ++a) probs[a] = std::exp(logp[a]);

        // Clipped surrogate. ratio = exp(logpi_new - logpi_old).
        const double log_ratio = logp[action] - old_logp;
        const double ratio = std::exp(log_ratio);
        const double clipped = std::clamp(ratio, 1.0 - cfg.clip_eps, 1.0 + cfg.clip_eps);
        const double surr_unclipped = ratio * advantage;
        const double surr_clipped = clipped * advantage;
        const bool use_unclipped = surr_unclipped <= surr_clipped;
        policy_loss += -std::min(surr_unclipped, surr_clipped);

        // d(-min)/d(logp[action]): exp path only when the unclipped branch is
        // active (the clipped branch is constant w.r.t. parameters at the
        // evaluation point unless the ratio is inside the band, where both
        // branches coincide anyway).
        double dlogp_action = 0.0;
        if (use_unclipped || (ratio > 1.0 - cfg.clip_eps && ratio < 1.0 + cfg.clip_eps)) {
            dlogp_action = -ratio * advantage;
        }

        // Entropy bonus: H = -sum p*logp; dH/dlogit_a = -p_a*(logp_a + H).
        double entropy = 0.0;
        for (int a = 0; a < n_actions; ++a) entropy -= probs[a] * logp[a];
        entropy_sum += entropy;

        // Value loss: (v - return)^2.
        const double v_err = ws.value - ret;
        value_loss += v_err * v_err;

        kl_sum += (ratio - 1.0) - log_ratio;

        // Backprop: d loss/d logits through log-softmax for both the selected
        // log-prob term and the entropy term.
        // d logp[action]/d logit_a = [a==action] - p_a.
        for (int a = 0; a < n_actions; ++a) {
            const double d_sel = ((a == action) ? 1.0 : 0.0) - probs[a];
            const double d_ent = -probs[a] * (logp[a] + entropy);
            dlogits[a] = inv_n * (dlogp_action * d_sel - cfg.entropy_coef * d_ent);
        }
        const double dvalue = inv_n * cfg.value_coef * 2.0 * v_err;
        net.backward(ws, dlogits, dvalue, grad);
    }

    policy_loss *= inv_n;
    value_loss *= inv_n;
    const double entropy_mean = entropy_sum * inv_n;
    if (stats) {
        stats->policy_loss = policy_loss;
        stats->value_loss = value_loss;
        stats->entropy = entropy_mean;
        stats->approx_kl = kl_sum * inv_n;
    }
    return policy_loss + cfg.value_coef * value_loss - cfg.entropy_coef * entropy_mean;
}

namespace {

void clip_grad_norm(std::vector<double>& grad, double max_norm) {
    double norm_sq = 0.0;
    for (double g : grad) norm_sq += g * g;
    const double norm = std::sqrt(norm_sq);
    if (norm > max_norm && norm > 0.0) {
        const double scale = max_norm / norm;
        for (double& g : grad) g *= scale;
    }
}

}  // namespace

PPOStats ppo_update(ActorCritic& net, Adam& opt, const Batch& batch, const PPOConfig& cfg,
                    Rng& rng) {
    if (batch.size() == 0) throw std::invalid_argument("ppo_update: empty batch");
    PPOStats total;
    const std::vector<double> params_before = net.params();

    std::vector<int> order(batch.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad;
    const size_t mb_size = std::min<size_t>(std::max(cfg.minibatch, 1), batch.size());

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates with the caller's rng keeps the update deterministic.
        for (size_t i = order.size(); i > 1; --i) {
            const size_t j = rng.uniform_int(i);
            std::swap(order[i - 1], order[j]);
        }
        for (size_t start = 0; start < order.size(); start += mb_size) {
            const size_t end = std::min(start + mb_size, order.size());
            std::vector<int> mb(order.begin() + start, order.begin() + end);
            PPOStats stats;
            const double loss = ppo_loss_and_grad(net, batch, mb, cfg, grad, &stats);
            if (!std::isfinite(loss)) {
                net.params() = params_before;
                total.aborted_non_finite = true;
                return total;
            }
            clip_grad_norm(grad, cfg.max_grad_norm);
            opt.step(net.params(), grad);

            total.policy_loss += stats.policy_loss;
            total.value_loss += stats.value_loss;
            total.entropy += stats.entropy;
            total.approx_kl += stats.approx_kl;
            ++total.minibatches;
        }
    }
    if (total.minibatches > 0) {
        total.policy_loss /= total.minibatches;
        total.value_loss /= total.minibatches;
        total.entropy /= total.minibatches;
        total.approx_kl /= total.minibatches;
    }
    return total;
}

}  // namespace ecosim
