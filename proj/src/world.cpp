#include "ecosim/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ecosim/scenarios.hpp"
#include "ecosim/sensing.hpp"

namespace ecosim {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void Space::validate() const {
    if (dims != 2 && dims != 3) throw std::invalid_argument("space.dims must be 2 or 3");
    if (!(min.x < max.x) || !(min.y < max.y))
        throw std::invalid_argument("space bounds: min < max required on every axis");
    if (dims == 3 && !(min.z < max.z))
        throw std::invalid_argument("space bounds: min.z < max.z required in 3-D");
}

void EventLog::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open event log for writing: " + path);
    out << to_text();
}

std::string EventLog::to_text() const {
    std::ostringstream out;
    for (const Event& e : events_)
        out << e.tick << '\t' << e.kind << '\t' << e.org_id << '\t' << e.detail << '\n';
    return out.str();
}

void WorldState::rebuild_indices() {
    inanimate_by_type.clear();
    organisms_by_species.clear();
    for (size_t i = 0; i < inanimate.size(); ++i)
        inanimate_by_type[inanimate[i].type_tag].push_back(static_cast<int>(i));
    for (size_t i = 0; i < organisms.size(); ++i) {
        if (!organisms[i].alive) continue;
        organisms_by_species[species_of(organisms[i]).name].push_back(static_cast<int>(i));
    }
}

const SpeciesSpec& WorldState::species_of(const Organism& org) const {
    return scenario->species[org.species_idx];
}

Organism* WorldState::find_organism(int id) {
    for (Organism& o : organisms)
        if (o.id == id) return &o;
    return nullptr;
}

int WorldState::count_species(int species_idx) const {
    int n = 0;
    for (const Organism& o : organisms)
        if (o.alive && o.species_idx == species_idx) ++n;
    return n;
}

void WorldState::validate() const {
    space.validate();
    int prev_id = -1;
    for (const Organism& o : organisms) {
        if (o.id <= prev_id)
            throw std::runtime_error("world invariant: organism ids not strictly increasing at id " +
                                     std::to_string(o.id));
        prev_id = o.id;
        if (std::abs(o.heading.norm() - 1.0) > 1e-9)
            throw std::runtime_error("world invariant: heading not unit norm for organism " +
                                     std::to_string(o.id));
        if (o.props.fertility < 0.0 || o.props.fertility > 1.0)
            throw std::runtime_error("world invariant: Fertility outside [0,1] for organism " +
                                     std::to_string(o.id));
        if (o.props.age_s < 0.0)
            throw std::runtime_error("world invariant: negative Age for organism " +
                                     std::to_string(o.id));
        for (const auto& [name, value] : o.props.chemical) {
            if (value < 0.0)
                throw std::runtime_error("world invariant: chemical " + name +
                                         " negative for organism " + std::to_string(o.id));
        }
        if (o.conf.radius <= 0.0)
            throw std::runtime_error("world invariant: non-positive radius for organism " +
                                     std::to_string(o.id));
    }
}

Vec3 confine(const Space& space, Vec3 pos, double radius) {
    auto clamp_axis = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };
    auto wrap_axis = [](double v, double lo, double hi) {
        const double span = hi - lo;
        double r = std::fmod(v - lo, span);
        if (r < 0.0) r += span;
        return lo + r;
    };
    if (space.boundary == BoundaryMode::wall) {
        pos.x = clamp_axis(pos.x, space.min.x + radius, space.max.x - radius);
        pos.y = clamp_axis(pos.y, space.min.y + radius, space.max.y - radius);
        if (space.dims == 3)
            pos.z = clamp_axis(pos.z, space.min.z + radius, space.max.z - radius);
        else
            pos.z = 0.0;
    } else {
        pos.x = wrap_axis(pos.x, space.min.x, space.max.x);
        pos.y = wrap_axis(pos.y, space.min.y, space.max.y);
        if (space.dims == 3)
            pos.z = wrap_axis(pos.z, space.min.z, space.max.z);
        else
            pos.z = 0.0;
    }
    return pos;
}

bool spheres_overlap(const Conformation& a, const Conformation& b, double margin) {
    const double reach = a.radius + b.radius + margin;
    return (a.center - b.center).norm_sq() <= reach * reach;
}

namespace {

void passive_update(WorldState& world, Organism& org, const SpeciesSpec& sp) {
    org.props.age_s += world.dt;
    if (sp.baseline_drain_per_s > 0.0) {
        const double e = org.props.energy();
        org.props.set_energy(std::max(0.0, e - sp.baseline_drain_per_s * world.dt));
    }
    if (sp.oxygen_decay_per_s > 0.0) {
        auto it = org.props.chemical.find("Oxygen");
        if (it != org.props.chemical.end())
            it->second = std::max(0.0, it->second - sp.oxygen_decay_per_s * world.dt);
    }
    // Fertility gate: mature and fed.
    const Hyperparameters& hyper = org.hyper;
    org.props.fertility =
        (org.props.age_s >= hyper.maturity_age_s && org.props.energy() >= hyper.repro_min_energy)
            ? 1.0
            : 0.0;
    org.props.physical["PosX"] = org.conf.center.x;
    org.props.physical["PosY"] = org.conf.center.y;
    org.props.physical["PosZ"] = org.conf.center.z;
}

struct EatTarget {
    bool is_organism = false;
    int index = -1;  // into world.inanimate or world.organisms
    double dist_sq = 0.0;
};

std::optional<EatTarget> find_eat_target(WorldState& world, const Organism& org,
                                         const SpeciesSpec& sp) {
    std::optional<EatTarget> best;
    auto consider = [&](bool is_org, int index, const Conformation& conf) {
        const double reach = org.conf.radius + conf.radius + sp.eat_margin_m;
        const double d2 = (org.conf.center - conf.center).norm_sq();
        if (d2 > reach * reach) return;
        if (!best || d2 < best->dist_sq ||
            (d2 == best->dist_sq && !is_org && best->is_organism)) {
            best = EatTarget{is_org, index, d2};
        }
    };
    for (const auto& [tag, entry] : sp.edible) {
        auto it = world.inanimate_by_type.find(tag);
        if (it != world.inanimate_by_type.end()) {
            for (int idx : it->second) {
                const InanimateObject& obj = world.inanimate[idx];
                if (obj.props.energy() == 0.0) continue;  // consumed or empty
                consider(false, idx, obj.conf);
            }
        }
        auto sit = world.organisms_by_species.find(tag);
        if (sit != world.organisms_by_species.end()) {
            for (int idx : sit->second) {
                const Organism& prey = world.organisms[idx];
                if (!prey.alive || prey.id == org.id) continue;
                consider(true, idx, prey.conf);
            }
        }
    }
    return best;
}

}  // namespace

EffectSummary apply_decision(WorldState& world, Organism& org,
                             const std::vector<uint8_t>& multi_hot, EventLog* log) {
    const SpeciesSpec& sp = world.species_of(org);
    if (multi_hot.size() != sp.actions.size())
        throw std::invalid_argument("apply_decision: decision length " +
                                    std::to_string(multi_hot.size()) + " != action count " +
                                    std::to_string(sp.actions.size()) + " of species " + sp.name);

    EffectSummary fx;
    passive_update(world, org, sp);

    // Resolve the multi-hot into effect components.
    int winner_gait = -1;
    int rotate_sum = 0;
    bool eat = sp.auto_eat;
    bool breathe = false;
    double energy_delta = 0.0;
    Vec3 swim{0.0, 0.0, 0.0};
    bool any_swim = false;
    for (size_t a = 0; a < multi_hot.size(); ++a) {
        if (!multi_hot[a]) continue;
        const ActionDef& act = sp.actions[a];
        if (act.speed > 0.0 && (winner_gait < 0 || act.speed > sp.actions[winner_gait].speed))
            winner_gait = static_cast<int>(a);
        rotate_sum += act.rotate;
        eat = eat || act.eat;
        breathe = breathe || act.breathe;
        energy_delta += act.energy_delta;
        if (act.swim.norm_sq() > 0.0) {
            swim += act.swim;
            any_swim = true;
        }
    }
    fx.rotate = rotate_sum > 0 ? 1 : (rotate_sum < 0 ? -1 : 0);
    fx.speed = winner_gait >= 0 ? sp.actions[winner_gait].speed : 0.0;
    fx.swim = swim;

    // Energy debit: the winning gait's configured cost, plus the costs of
    // every other active non-gait action. Costs already scale with speed via
    // the per-action config values.
    double cost = 0.0;
    for (size_t a = 0; a < multi_hot.size(); ++a) {
        if (!multi_hot[a]) continue;
        const ActionDef& act = sp.actions[a];
        if (act.speed > 0.0 && static_cast<int>(a) != winner_gait) continue;
        auto it = org.hyper.move_costs.find(act.name);
        if (it != org.hyper.move_costs.end()) cost += it->second;
    }
    fx.energy_cost = cost * world.dt;
    if (fx.energy_cost != 0.0)
        org.props.set_energy(std::max(0.0, org.props.energy() - fx.energy_cost));

    // Rotation then locomotion along the (new) heading.
    if (fx.rotate != 0) org.heading = org.heading.rotated_z(fx.rotate * sp.rotate_step_rad);
    Vec3 displacement = org.heading * (fx.speed * world.dt) + swim * world.dt;
    if (displacement.norm_sq() > 0.0) {
        org.conf.center = confine(world.space, org.conf.center + displacement, org.conf.radius);
        if (any_swim) {
            const Vec3 dir = displacement.normalized();
            if (dir.norm_sq() > 0.0) org.heading = dir;
        }
        org.props.physical["PosX"] = org.conf.center.x;
        org.props.physical["PosY"] = org.conf.center.y;
        org.props.physical["PosZ"] = org.conf.center.z;
    }

    if (energy_delta != 0.0)
        org.props.set_energy(std::max(0.0, org.props.energy() + energy_delta));

    if (breathe) {
        fx.breathed = true;
        double& oxygen = org.props.chemical["Oxygen"];
        oxygen = std::min(1.0, oxygen + sp.breathe_rate_per_s * world.dt * (1.0 - oxygen));
    }

    if (eat) {
        auto target = find_eat_target(world, org, sp);
        if (target) {
            if (target->is_organism) {
                Organism& prey = world.organisms[target->index];
                const SpeciesSpec& prey_sp = world.species_of(prey);
                const EdibleEntry& entry = sp.edible.at(prey_sp.name);
                const double prey_energy = prey.props.energy();
                const double transfer = std::min(entry.bite, prey_energy);
                prey.props.set_energy(prey_energy - transfer);
                org.props.add_energy(transfer);
                prey.alive = false;
                prey.death_cause = "eaten";
                fx.ate = true;
                fx.ate_type = prey_sp.name;
                fx.energy_gained = transfer;
                if (entry.lethal_to_eater) {
                    org.alive = false;
                    org.death_cause = "ate_" + prey_sp.name;
                    fx.lethal_eat = true;
                }
            } else {
                InanimateObject& obj = world.inanimate[target->index];
                const EdibleEntry& entry = sp.edible.at(obj.type_tag);
                const double obj_energy = obj.props.energy();
                const double mag = std::min(entry.bite, std::abs(obj_energy));
                const double transfer = obj_energy < 0.0 ? -mag : mag;
                obj.props.set_energy(obj_energy - transfer);
                org.props.add_energy(transfer);
                fx.ate = true;
                fx.ate_type = obj.type_tag;
                fx.energy_gained = transfer;
                if (entry.lethal_to_eater) {
                    org.alive = false;
                    org.death_cause = "ate_" + obj.type_tag;
                    fx.lethal_eat = true;
                }
            }
            if (log)
                log->append(world.tick, "eat", org.id,
                            fx.ate_type + " " + fmt_double(fx.energy_gained));
        }
    }
    return fx;
}

std::optional<std::string> check_death(const Organism& org, const SpeciesSpec& species) {
    const Hyperparameters& hyper = org.hyper;
    if (org.props.age_s > hyper.age_max_s) return "age";
    for (const auto& [prop, interval] : hyper.survival_intervals) {
        const double v = org.props.get(prop);
        if (v < interval.first)
            return prop + " below " + fmt_double(interval.first);
        if (v > interval.second)
            return prop + " above " + fmt_double(interval.second);
    }
    return std::nullopt;
}

void kill(WorldState& world, int org_id, const std::string& cause, EventLog* log) {
    auto it = std::find_if(world.organisms.begin(), world.organisms.end(),
                           [org_id](const Organism& o) { return o.id == org_id; });
    if (it == world.organisms.end())
        throw std::invalid_argument("kill: unknown organism id " + std::to_string(org_id));

    const SpeciesSpec& sp = world.species_of(*it);
    InanimateObject carcass;
    carcass.id = world.next_id++;
    carcass.type_tag = "Carcass_" + sp.name;
    carcass.props = it->props;
    for (auto& [name, value] : carcass.props.chemical) value = std::max(0.0, value);
    carcass.conf = it->conf;
    carcass.solid = false;
    carcass.decay_ticks_left = world.scenario ? world.scenario->carcass_decay_ticks : -1;

    if (!it->buffer.transitions.empty()) it->buffer.transitions.back().done = true;
    if (log) log->append(world.tick, "death", org_id, sp.name + " " + cause);

    world.inanimate.push_back(std::move(carcass));
    world.organisms.erase(it);
}

namespace {

bool position_free(const WorldState& world, const Conformation& conf) {
    for (const Organism& o : world.organisms) {
        if (!o.alive) continue;
        if (spheres_overlap(conf, o.conf)) return false;
    }
    for (const InanimateObject& obj : world.inanimate) {
        if (!obj.solid) continue;
        if (spheres_overlap(conf, obj.conf)) return false;
    }
    return true;
}

}  // namespace

int spawn(WorldState& world, Organism&& child, Placement placement, const Vec3& anchor,
          EventLog* log) {
    const SpeciesSpec& sp = world.scenario->species[child.species_idx];
    if (world.count_species(child.species_idx) >= sp.population_cap) {
        if (log) log->append(world.tick, "spawn_skipped", -1, sp.name + " cap");
        return -1;
    }

    const int retries = world.scenario->spawn_max_retries;
    bool placed = false;
    for (int attempt = 0; attempt < retries; ++attempt) {
        Vec3 pos;
        if (placement == Placement::random_unoccupied) {
            pos.x = world.rng.uniform(world.space.min.x + child.conf.radius,
                                      world.space.max.x - child.conf.radius);
            pos.y = world.rng.uniform(world.space.min.y + child.conf.radius,
                                      world.space.max.y - child.conf.radius);
            pos.z = world.space.dims == 3
                        ? world.rng.uniform(world.space.min.z + child.conf.radius,
                                            world.space.max.z - child.conf.radius)
                        : 0.0;
        } else {
            const double angle = world.rng.uniform(0.0, 6.283185307179586477);
            const double dist = child.conf.radius + world.rng.uniform(0.5, 2.5);
            pos = anchor + Vec3{std::cos(angle) * dist, std::sin(angle) * dist, 0.0};
            if (world.space.dims == 3) pos.z = anchor.z + world.rng.uniform(-1.0, 1.0);
            pos = confine(world.space, pos, child.conf.radius);
        }
        Conformation candidate{pos, child.conf.radius};
        if (position_free(world, candidate)) {
            child.conf.center = pos;
            placed = true;
            break;
        }
    }
    if (!placed) {
        if (log) log->append(world.tick, "spawn_skipped", -1, sp.name + " no_space");
        return -1;
    }

    child.id = world.next_id++;
    child.birth_tick = world.tick;
    child.episode_start_tick = world.tick;
    child.rng = Rng::stream(world.run_seed, static_cast<uint64_t>(child.id));
    child.props.physical["PosX"] = child.conf.center.x;
    child.props.physical["PosY"] = child.conf.center.y;
    child.props.physical["PosZ"] = child.conf.center.z;
    const int id = child.id;
    world.organisms.push_back(std::move(child));
    world.rebuild_indices();

    // Happiness at birth seeds last_happiness so the first reward is defined.
    Organism& placed_org = world.organisms.back();
    placed_org.buffer.last_happiness = read_happiness(world, placed_org);
    placed_org.buffer.has_last_happiness = true;

    if (log)
        log->append(world.tick, "birth", id, sp.name + " " + placed_org.genome.symbols);
    return id;
}

Organism create_organism(WorldState& world, int species_idx, const Genome& genome,
                         const ActorCritic* parent_policy, double policy_noise) {
    const SpeciesSpec& sp = world.scenario->species[species_idx];
    Organism org;
    org.species_idx = species_idx;
    org.genome = genome;

    const DecodedGenome decoded = decode(genome, sp.gene_table);
    org.reflex = build_reflex_network(sp, decoded.reflexes);
    org.happiness_net = build_happiness_network(sp);
    org.hyper = sp.hyper;
    for (const auto& [name, value] : decoded.hyper_overrides) {
        if (name == "age_max")
            org.hyper.age_max_s = value;
        else if (name == "birth_prob")
            org.hyper.birth_prob = value;
        else if (name == "mutation_rate")
            org.hyper.mutation_rate = value;
        else
            throw std::invalid_argument("unknown hyperparameter override: " + name);
    }

    org.props.chemical = sp.initial_chemical;
    org.conf.radius = sp.radius_m;
    org.buffer.capacity = org.hyper.ppo_rollout_capacity();

    Rng& seed_rng = const_cast<WorldState&>(world).rng;
    if (sp.assign_sex) org.props.sex = seed_rng.bernoulli(0.5) ? Sex::female : Sex::male;
    const double angle = seed_rng.uniform(0.0, 6.283185307179586477);
    org.heading = Vec3{std::cos(angle), std::sin(angle), 0.0};

    if (parent_policy != nullptr) {
        org.policy = std::make_shared<ActorCritic>(*parent_policy);
        if (policy_noise > 0.0)
            for (double& p : org.policy->params()) p += seed_rng.normal(0.0, policy_noise);
    } else {
        org.policy = std::make_shared<ActorCritic>(sp.sensors.obs_dim, sp.hidden,
                                                   static_cast<int>(sp.actions.size()), seed_rng);
        org.policy->input_scale = policy_input_scale(sp);
    }
    if (decoded.policy_seed_salt != 0) {
        Rng salt_rng(decoded.policy_seed_salt);
        for (double& p : org.policy->params()) p += salt_rng.normal(0.0, 0.01);
    }
    org.optimizer = std::make_shared<Adam>(org.policy->param_count(), org.hyper.ppo.lr);
    return org;
}

}  // namespace ecosim
