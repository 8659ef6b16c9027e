#include "ecosim/nervous.hpp"

#include <cmath>
#include <stdexcept>

namespace ecosim {

std::vector<int8_t> reflex_out(const ReflexNetwork& net, const Observation& x) {
    if (static_cast<int>(x.size()) != net.n_inputs)
        throw std::invalid_argument("reflex_out: observation dimension mismatch");
    std::vector<int8_t> y(net.n_actions, 0);
    for (int a = 0; a < net.n_actions; ++a) {
        double activation = -net.thresholds[a];
        const int8_t* row = net.weights.data() + static_cast<size_t>(a) * net.n_inputs;
        for (int j = 0; j < net.n_inputs; ++j) {
            if (row[j] != 0) activation += static_cast<double>(row[j]) * x[j];
        }
        y[a] = activation > 0.0 ? int8_t{1} : (activation < 0.0 ? int8_t{-1} : int8_t{0});
    }
    return y;
}

double happiness(const HappinessNetwork& net, const Observation& x) {
    if (x.size() != net.weights.size())
        throw std::invalid_argument("happiness: observation dimension mismatch");
    double h = net.bias;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw std::invalid_argument("happiness: non-finite input");
        h += net.weights[i] * x[i];
    }
    return h;
}

std::vector<uint8_t> combine(const std::vector<int8_t>& y, const std::vector<uint8_t>& z_one_hot) {
    if (y.size() != z_one_hot.size())
        throw std::invalid_argument("combine: length mismatch");
    int ones = 0;
    for (uint8_t v : z_one_hot) {
        if (v != 0 && v != 1) throw std::invalid_argument("combine: z is not one-hot");
        ones += v;
    }
    if (ones != 1) throw std::invalid_argument("combine: z is not one-hot");
    std::vector<uint8_t> out(y.size(), 0);
    for (size_t i = 0; i < y.size(); ++i)
        out[i] = (static_cast<int>(y[i]) + static_cast<int>(z_one_hot[i])) > 0 ? 1 : 0;
    return out;
}

}  // namespace ecosim
