#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ecosim/genome.hpp"
#include "ecosim/learn.hpp"
#include "ecosim/nervous.hpp"
#include "ecosim/vec.hpp"

namespace ecosim {

enum class Modality { vision_ray, smell, touch, internal_prop, light };

const char* to_string(Modality m);
Modality modality_from_string(const std::string& s);

// One declared sensor. Vision contributes two observation entries
// (min hit distance across the ray fan, hit flag); everything else one.
struct SensorDef {
    Modality modality = Modality::internal_prop;
    std::string target;       // object type tag, species name, property name, or "boundary"
    Vec3 location_offset{0.0, 0.0, 0.0};  // body frame, meters
    double range = 0.0;       // meters, ranged modalities
    int rays = 8;             // vision fan size
    double scale = 1.0;       // raw value divisor
    bool light_scaled_range = false;  // vision range multiplied by local light
};

// Fixed per-species observation layout: sensor order = declaration order.
struct SensorLayout {
    std::vector<SensorDef> sensors;
    std::vector<std::string> entry_names;  // one per observation entry
    std::vector<int> entry_offset;         // first entry index per sensor
    int obs_dim = 0;

    void build();
    int entry_index(const std::string& name) const;  // -1 when absent
};

// Structured action semantics. A flattened combo ("Run+RotateLeft") sets both
// a gait speed and a rotation sign; conflict resolution happens over the
// resolved components, not per action.
struct ActionDef {
    std::string name;
    double speed = 0.0;   // m/s along heading
    int rotate = 0;       // -1, 0, +1
    bool eat = false;
    bool breathe = false;
    Vec3 swim{0.0, 0.0, 0.0};   // axis-aligned swim direction (marine)
    double energy_delta = 0.0;  // direct chemical effect (calibration worlds)
};

struct HappinessTerm {
    std::string entry;  // observation entry name
    double weight = 0.0;
};

struct HappinessDef {
    std::vector<HappinessTerm> terms;
    double bias = 0.0;
};

enum class ReproductionMode { sexual, asexual, probabilistic_spawn };

const char* to_string(ReproductionMode m);
ReproductionMode reproduction_mode_from_string(const std::string& s);

struct Hyperparameters {
    double age_max_s = 1e9;
    std::map<std::string, std::pair<double, double>> survival_intervals;
    ReproductionMode reproduction_mode = ReproductionMode::probabilistic_spawn;
    double birth_prob = 0.0;     // per tick
    double mutation_rate = 0.0;  // per symbol
    PPOConfig ppo;
    std::map<std::string, double> move_costs;  // action name -> energy per active tick
    size_t rollout_capacity = 64;              // online per-organism buffer
    size_t pretrain_buffer_capacity = 512;     // pooled per-species buffer

    // Reproduction gating (not paper values).
    double maturity_age_s = 0.0;
    long repro_cooldown_ticks = 0;
    double mating_range_m = 2.0;
    double birth_energy_frac = 0.3;  // fraction of parent energy given to child
    double repro_min_energy = 0.0;   // Fertility = 1 requires Energy >= this
};

struct EdibleEntry {
    double bite = std::numeric_limits<double>::infinity();  // energy per eat event
    bool lethal_to_eater = false;
};

struct SpeciesSpec {
    std::string name;
    SensorLayout sensors;
    std::vector<ActionDef> actions;
    std::vector<GeneReflex> base_reflexes;  // present regardless of genome
    GeneTable gene_table;
    HappinessDef happiness;
    Hyperparameters hyper;
    std::vector<int> hidden{32, 32};

    std::map<std::string, EdibleEntry> edible;  // type tag or species name
    bool auto_eat = false;                      // ingest on contact, no Eat decision
    double eat_margin_m = 0.1;

    double radius_m = 0.5;
    double rotate_step_rad = 0.3;
    double baseline_drain_per_s = 0.0;  // passive metabolic energy loss
    std::map<std::string, double> initial_chemical;  // includes Energy
    std::vector<std::string> initial_genomes;        // cycled over initial population
    int population_cap = 1000;
    bool assign_sex = false;   // female/male alternating at creation
    long episode_ticks = 0;    // pretraining truncation horizon (0: none)

    double breathe_rate_per_s = 0.5;  // Oxygen recovery toward 1.0 while breathing
    double oxygen_decay_per_s = 0.0;  // passive Oxygen decline when modeled

    int action_index(const std::string& name) const {
        for (size_t i = 0; i < actions.size(); ++i)
            if (actions[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

// Builds the ternary reflex matrix for one organism: species base reflexes
// plus the genome's decoded rows, resolved against the layouts by name.
ReflexNetwork build_reflex_network(const SpeciesSpec& species,
                                   const std::vector<GeneReflex>& genome_reflexes);

// Resolves the happiness definition to per-entry weights.
HappinessNetwork build_happiness_network(const SpeciesSpec& species);

// Per-entry input scaling for the policy network (vision distances divided by
// range; other entries already O(1)).
std::vector<double> policy_input_scale(const SpeciesSpec& species);

}  // namespace ecosim
