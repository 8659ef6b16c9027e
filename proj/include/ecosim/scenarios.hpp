#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecosim/sensing.hpp"
#include "ecosim/species.hpp"
#include "ecosim/world.hpp"

namespace ecosim {

// Declarative inanimate population: count, per-patch energy/regrowth, and
// logistic population reseeding (new patches appear at r*N*(1-N/cap) per
// second, spawned at random free positions).
struct InanimateSpawn {
    std::string type_tag;
    int count = 0;
    double radius_m = 0.5;
    double energy = 5.0;
    double energy_capacity = 5.0;
    double regrow_rate_per_s = 0.0;
    double reseed_rate_per_s = 0.0;
    int population_cap = 0;  // 0: no reseeding cap tracking
    bool solid = false;
    // Placement band as fractions of the z extent (marine surface layers).
    double depth_frac_min = 0.0;
    double depth_frac_max = 1.0;
};

struct ScenarioConfig {
    std::string name;
    Space space;
    double dt = 1.0;
    std::vector<SpeciesSpec> species;
    std::vector<InanimateSpawn> inanimate;
    LightModel light;
    std::map<std::string, int> initial_population;  // species name -> count
    long pretrain_steps = 0;
    long run_steps = 0;
    long carcass_decay_ticks = 300;
    int spawn_max_retries = 64;

    int species_index(const std::string& name) const;
    void validate() const;  // throws with field paths on the first violation
};

// The paper's three studies, desk scale. Constants are tuned config values,
// not reported ones.
ScenarioConfig build_predator_prey();
ScenarioConfig build_marine();
ScenarioConfig build_reflex_goats();

// Calibration worlds for the learner acceptance gates.
ScenarioConfig build_bandit();
ScenarioConfig build_gridworld();

// nullptr when the name is unknown.
ScenarioConfig builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

// JSON round-trip. export_config is deterministic (sorted keys), so
// export(load(export(c))) == export(c) byte for byte.
std::string export_config(const ScenarioConfig& config);
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& config, const std::string& path);

// FNV-1a over the exported form; stamped into run manifests.
uint64_t config_hash(const ScenarioConfig& config);

// Seeds the world: inanimate spawns then initial organism populations, both
// from the run seed. Organism genomes cycle each species' initial_genomes.
WorldState build_world(const ScenarioConfig& config, uint64_t seed, EventLog* log);

}  // namespace ecosim
