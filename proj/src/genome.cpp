#include "ecosim/genome.hpp"

#include <set>
#include <stdexcept>

namespace ecosim {

Genome mutate(const Genome& g, double rate, Rng& rng, const GeneTable& table) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutation rate outside [0,1]");
    const std::string alphabet = table.alphabet();
    if (alphabet.empty()) throw std::invalid_argument("empty gene alphabet");

    Genome out = g;
    // Per-symbol substitution: draw from the other symbols, so the observed
    // substitution frequency equals the configured rate.
    for (char& c : out.symbols) {
        if (!rng.bernoulli(rate)) continue;
        if (alphabet.size() == 1) {
            c = alphabet[0];
            continue;
        }
        size_t pick = rng.uniform_int(alphabet.size() - 1);
        char replacement = alphabet[pick];
        if (replacement == c) replacement = alphabet[alphabet.size() - 1];
        c = replacement;
    }

    // One structural event per call: insert or delete a random symbol,
    // respecting the length bounds.
    if (rng.bernoulli(rate)) {
        const bool insert = rng.bernoulli(0.5);
        if (insert && out.symbols.size() < table.max_length) {
            const size_t pos = rng.uniform_int(out.symbols.size() + 1);
            const char sym = alphabet[rng.uniform_int(alphabet.size())];
            out.symbols.insert(out.symbols.begin() + pos, sym);
        } else if (!insert && out.symbols.size() > table.min_length) {
            const size_t pos = rng.uniform_int(out.symbols.size());
            out.symbols.erase(out.symbols.begin() + pos);
        }
    }
    return out;
}

Genome crossover(const Genome& g1, const Genome& g2, Rng& rng) {
    const size_t max_cut = std::min(g1.symbols.size(), g2.symbols.size());
    const size_t cut = rng.uniform_int(max_cut + 1);
    Genome child;
    child.symbols = g1.symbols.substr(0, cut) + g2.symbols.substr(cut);
    return child;
}

DecodedGenome decode(const Genome& g, const GeneTable& table) {
    DecodedGenome out;
    std::set<char> seen;
    std::map<char, GeneReflex> reflexes;
    for (char c : g.symbols) {
        auto it = table.effects.find(c);
        if (it == table.effects.end())
            throw std::invalid_argument(std::string("genome symbol outside alphabet: ") + c);
        // Idempotent per symbol: the second occurrence of a gene is a no-op.
        if (!seen.insert(c).second) continue;
        const GeneEffect& eff = it->second;
        switch (eff.kind) {
            case GeneEffectKind::reflex_entry:
                reflexes.emplace(c, eff.reflex);
                break;
            case GeneEffectKind::hyper_override:
                out.hyper_overrides[eff.hyper_name] = eff.hyper_value;
                break;
            case GeneEffectKind::policy_seed:
                out.policy_seed_salt ^= eff.policy_seed_salt;
                break;
            case GeneEffectKind::noop:
                break;
        }
    }
    // Symbol-sorted emission keeps decode order-independent for commuting
    // effects: "RB" and "BR" produce the same phenotype.
    for (const auto& [sym, reflex] : reflexes) out.reflexes.push_back(reflex);
    return out;
}

}  // namespace ecosim
