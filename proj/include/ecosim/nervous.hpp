#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ecosim {

// Observation vector x: one scalar per sensor entry, layout fixed per species
// (declaration order).
using Observation = std::vector<double>;

// Untrainable single-layer network with ternary weights and per-action
// thresholds. Output y_i = sgn(sum_j w_ij * x_j - theta_i), sgn(0) = 0:
// -1 blocks the action, 0 accepts, +1 forces. Evolves only via the genome.
struct ReflexNetwork {
    int n_actions = 0;
    int n_inputs = 0;
    std::vector<int8_t> weights;      // row-major, n_actions x n_inputs, in {-1,0,+1}
    std::vector<double> thresholds;   // length n_actions

    static ReflexNetwork empty(int n_actions, int n_inputs) {
        ReflexNetwork net;
        net.n_actions = n_actions;
        net.n_inputs = n_inputs;
        net.weights.assign(static_cast<size_t>(n_actions) * n_inputs, 0);
        net.thresholds.assign(n_actions, 0.0);
        return net;
    }

    int8_t& at(int action, int input) { return weights[static_cast<size_t>(action) * n_inputs + input]; }
    int8_t at(int action, int input) const { return weights[static_cast<size_t>(action) * n_inputs + input]; }
};

std::vector<int8_t> reflex_out(const ReflexNetwork& net, const Observation& x);

// Fixed linear map from the observation to one scalar; never trained.
struct HappinessNetwork {
    std::vector<double> weights;  // length = obs dim
    double bias = 0.0;

    // Indices with nonzero weight, so the per-tick happiness read can skip
    // expensive sensors (vision) that never enter the happiness value.
    std::vector<int> active_entries() const {
        std::vector<int> idx;
        for (int i = 0; i < static_cast<int>(weights.size()); ++i)
            if (weights[i] != 0.0) idx.push_back(i);
        return idx;
    }
};

double happiness(const HappinessNetwork& net, const Observation& x);

// H(y+z): output_i = 1 iff y_i + z_i > 0. Forced actions always execute,
// blocked actions never do, the policy's choice passes through where accepted.
std::vector<uint8_t> combine(const std::vector<int8_t>& y, const std::vector<uint8_t>& z_one_hot);

struct Decision {
    std::vector<uint8_t> multi_hot;
    int chosen_policy_action = -1;
    double log_prob = 0.0;
    double value = 0.0;
};

}  // namespace ecosim
