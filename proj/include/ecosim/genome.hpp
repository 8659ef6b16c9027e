#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ecosim/rng.hpp"

namespace ecosim {

// String over a finite, scenario-declared alphabet.
struct Genome {
    std::string symbols;

    bool operator==(const Genome& o) const { return symbols == o.symbols; }
};

enum class GeneEffectKind { reflex_entry, hyper_override, policy_seed, noop };

// A reflex connection contributed by one gene: sensor entry -> action with a
// ternary weight. Resolved against the species' sensor/action layouts when the
// genome is decoded.
struct GeneReflex {
    std::string sensor_entry;
    std::string action;
    double weight = 0.0;     // +1 or -1
    double threshold = 0.0;  // per-action threshold contribution
};

struct GeneEffect {
    GeneEffectKind kind = GeneEffectKind::noop;
    GeneReflex reflex;
    std::string hyper_name;
    double hyper_value = 0.0;
    uint64_t policy_seed_salt = 0;
};

// Total map symbol -> effect over the scenario alphabet.
struct GeneTable {
    std::map<char, GeneEffect> effects;
    size_t min_length = 1;
    size_t max_length = 16;

    std::string alphabet() const {
        std::string a;
        for (const auto& [sym, eff] : effects) a.push_back(sym);
        return a;
    }

    bool valid_symbol(char c) const { return effects.count(c) > 0; }
};

Genome mutate(const Genome& g, double rate, Rng& rng, const GeneTable& table);
Genome crossover(const Genome& g1, const Genome& g2, Rng& rng);

// Decoded phenotype pieces layered onto a species template. Reflex effects of
// duplicate symbols are idempotent (keyed per symbol).
struct DecodedGenome {
    std::vector<GeneReflex> reflexes;            // in symbol-sorted order, unique
    std::map<std::string, double> hyper_overrides;
    uint64_t policy_seed_salt = 0;
};

DecodedGenome decode(const Genome& g, const GeneTable& table);

}  // namespace ecosim
