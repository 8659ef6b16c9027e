#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ecosim/genome.hpp"
#include "ecosim/learn.hpp"
#include "ecosim/mlp.hpp"
#include "ecosim/nervous.hpp"
#include "ecosim/properties.hpp"
#include "ecosim/rng.hpp"
#include "ecosim/species.hpp"
#include "ecosim/vec.hpp"

namespace ecosim {

struct ScenarioConfig;

enum class BoundaryMode { wall, torus };

struct Space {
    int dims = 2;  // 2 or 3; 2-D keeps z == 0
    Vec3 min{0.0, 0.0, 0.0};
    Vec3 max{100.0, 100.0, 0.0};
    BoundaryMode boundary = BoundaryMode::wall;

    void validate() const;
};

// Spatial extent: a sphere (circle in 2-D).
struct Conformation {
    Vec3 center;
    double radius = 0.5;
};

struct InanimateObject {
    int id = 0;
    std::string type_tag;
    PropertyBag props;
    Conformation conf;
    bool solid = false;
    bool consumed = false;            // eaten to zero this tick; compacted away
    long decay_ticks_left = -1;       // <0: persists
    double energy_capacity = 0.0;     // per-patch logistic regrowth target
    double regrow_rate_per_s = 0.0;   // 0: no regrowth
};

struct Organism {
    int id = 0;
    int species_idx = 0;
    Genome genome;
    PropertyBag props;
    Conformation conf;
    Vec3 heading{1.0, 0.0, 0.0};
    ReflexNetwork reflex;
    HappinessNetwork happiness_net;
    Hyperparameters hyper;  // species defaults + genome overrides
    std::shared_ptr<ActorCritic> policy;
    std::shared_ptr<Adam> optimizer;
    RolloutBuffer buffer;
    Rng rng;

    bool alive = true;
    std::string death_cause;  // set when dying within the current tick
    long birth_tick = 0;
    long last_repro_tick = -1000000;
    long episode_start_tick = 0;

    // Per-tick scratch, filled by the decision phase.
    Observation obs;
    Decision decision;
    bool has_decision = false;
};

struct Event {
    long tick = 0;
    std::string kind;
    int org_id = 0;
    std::string detail;
};

class EventLog {
public:
    void append(long tick, const std::string& kind, int org_id, const std::string& detail) {
        events_.push_back({tick, kind, org_id, detail});
    }
    const std::vector<Event>& events() const { return events_; }
    void write(const std::string& path) const;
    std::string to_text() const;

private:
    std::vector<Event> events_;
};

struct WorldState {
    long tick = 0;
    double dt = 1.0;
    Space space;
    std::vector<InanimateObject> inanimate;
    std::vector<Organism> organisms;  // ascending id
    Rng rng;
    uint64_t run_seed = 0;
    int next_id = 1;
    const ScenarioConfig* scenario = nullptr;

    // Sensing indices, rebuilt at the start of every tick.
    std::map<std::string, std::vector<int>> inanimate_by_type;
    std::map<std::string, std::vector<int>> organisms_by_species;

    void rebuild_indices();
    const SpeciesSpec& species_of(const Organism& org) const;
    Organism* find_organism(int id);
    int count_species(int species_idx) const;
    void validate() const;  // invariant check; throws naming organism id + invariant
};

// Resolved effects of one multi-hot decision (gait priority, rotation
// cancellation, ingestion, breathing, direct deltas).
struct EffectSummary {
    double speed = 0.0;
    int rotate = 0;
    Vec3 swim{0.0, 0.0, 0.0};
    bool ate = false;
    std::string ate_type;
    double energy_gained = 0.0;
    bool lethal_eat = false;
    bool breathed = false;
    double energy_cost = 0.0;
};

// Applies one organism's decision: locomotion along the heading (clamped or
// wrapped per boundary mode), rotation, eating from an overlapping edible
// object, breathing, and the energy debit. Conflicting gaits resolve by speed
// priority (Run > Walk > Stand); opposite rotations cancel.
EffectSummary apply_decision(WorldState& world, Organism& org,
                             const std::vector<uint8_t>& multi_hot, EventLog* log);

// Cause string iff Age > age_max or a survival interval is violated.
std::optional<std::string> check_death(const Organism& org, const SpeciesSpec& species);

// Removes the organism and appends a carcass inanimate object carrying its
// remaining properties. The last buffered transition, if any, is marked done.
void kill(WorldState& world, int org_id, const std::string& cause, EventLog* log);

enum class Placement { near_parent, random_unoccupied };

// Inserts a child with a fresh id. random_unoccupied draws positions from the
// world rng until non-overlapping (bounded retries). Returns the assigned id,
// or -1 when skipped (cap reached / no free location), with the event logged.
int spawn(WorldState& world, Organism&& child, Placement placement, const Vec3& anchor,
          EventLog* log);

// Assembles an organism of the given species: decodes the genome into reflex
// rows and hyper overrides, builds the nets. The policy is either a fresh
// random init (when parent_policy is null) or a copy of parent_policy
// perturbed with N(0, noise). Draws initialization randomness from world.rng;
// the per-organism rng stream is seeded later, when spawn assigns the id.
Organism create_organism(WorldState& world, int species_idx, const Genome& genome,
                         const ActorCritic* parent_policy, double policy_noise);

// Clamp (wall) or wrap (torus) a center position; 2-D spaces pin z.
Vec3 confine(const Space& space, Vec3 pos, double radius);

bool spheres_overlap(const Conformation& a, const Conformation& b, double margin = 0.0);

}  // namespace ecosim
