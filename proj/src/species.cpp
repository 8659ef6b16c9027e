#include "ecosim/species.hpp"

#include <stdexcept>

namespace ecosim {

const char* to_string(Modality m) {
    switch (m) {
        case Modality::vision_ray: return "vision";
        case Modality::smell: return "smell";
        case Modality::touch: return "touch";
        case Modality::internal_prop: return "internal";
        case Modality::light: return "light";
    }
    return "internal";
}

Modality modality_from_string(const std::string& s) {
    if (s == "vision") return Modality::vision_ray;
    if (s == "smell") return Modality::smell;
    if (s == "touch") return Modality::touch;
    if (s == "internal") return Modality::internal_prop;
    if (s == "light") return Modality::light;
    throw std::invalid_argument("unknown sensor modality: " + s);
}

const char* to_string(ReproductionMode m) {
    switch (m) {
        case ReproductionMode::sexual: return "sexual";
        case ReproductionMode::asexual: return "asexual";
        case ReproductionMode::probabilistic_spawn: return "probabilistic_spawn";
    }
    return "probabilistic_spawn";
}

ReproductionMode reproduction_mode_from_string(const std::string& s) {
    if (s == "sexual") return ReproductionMode::sexual;
    if (s == "asexual") return ReproductionMode::asexual;
    if (s == "probabilistic_spawn") return ReproductionMode::probabilistic_spawn;
    throw std::invalid_argument("unknown reproduction mode: " + s);
}

void SensorLayout::build() {
    entry_names.clear();
    entry_offset.clear();
    obs_dim = 0;
    for (const SensorDef& s : sensors) {
        entry_offset.push_back(obs_dim);
        const std::string base = std::string(to_string(s.modality)) +
                                 (s.target.empty() ? "" : ":" + s.target);
        if (s.modality == Modality::vision_ray) {
            entry_names.push_back(base + ":dist");
            entry_names.push_back(base + ":hit");
            obs_dim += 2;
        } else {
            entry_names.push_back(base);
            obs_dim += 1;
        }
    }
    for (size_t i = 0; i < entry_names.size(); ++i)
        for (size_t j = i + 1; j < entry_names.size(); ++j)
            if (entry_names[i] == entry_names[j])
                throw std::invalid_argument("duplicate sensor entry name: " + entry_names[i]);
}

int SensorLayout::entry_index(const std::string& name) const {
    for (size_t i = 0; i < entry_names.size(); ++i)
        if (entry_names[i] == name) return static_cast<int>(i);
    return -1;
}

ReflexNetwork build_reflex_network(const SpeciesSpec& species,
                                   const std::vector<GeneReflex>& genome_reflexes) {
    ReflexNetwork net = ReflexNetwork::empty(static_cast<int>(species.actions.size()),
                                             species.sensors.obs_dim);
    auto apply = [&](const GeneReflex& r) {
        const int entry = species.sensors.entry_index(r.sensor_entry);
        if (entry < 0)
            throw std::invalid_argument("reflex sensor entry not found: " + r.sensor_entry);
        const int action = species.action_index(r.action);
        if (action < 0) throw std::invalid_argument("reflex action not found: " + r.action);
        const double w = r.weight;
        if (w != 1.0 && w != -1.0 && w != 0.0)
            throw std::invalid_argument("reflex weight must be ternary");
        net.at(action, entry) = static_cast<int8_t>(w);
        net.thresholds[action] += r.threshold;
    };
    for (const GeneReflex& r : species.base_reflexes) apply(r);
    for (const GeneReflex& r : genome_reflexes) apply(r);
    return net;
}

HappinessNetwork build_happiness_network(const SpeciesSpec& species) {
    HappinessNetwork net;
    net.weights.assign(species.sensors.obs_dim, 0.0);
    net.bias = species.happiness.bias;
    for (const HappinessTerm& t : species.happiness.terms) {
        const int entry = species.sensors.entry_index(t.entry);
        if (entry < 0)
            throw std::invalid_argument("happiness term entry not found: " + t.entry);
        net.weights[entry] += t.weight;
    }
    return net;
}

std::vector<double> policy_input_scale(const SpeciesSpec& species) {
    std::vector<double> scale(species.sensors.obs_dim, 1.0);
    for (size_t i = 0; i < species.sensors.sensors.size(); ++i) {
        const SensorDef& s = species.sensors.sensors[i];
        if (s.modality == Modality::vision_ray && s.range > 0.0)
            scale[species.sensors.entry_offset[i]] = 1.0 / s.range;
    }
    return scale;
}

}  // namespace ecosim
