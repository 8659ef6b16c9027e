#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecosim/world.hpp"

namespace ecosim {

struct LightModel {
    bool enabled = false;
    long period_ticks = 2000;
    double attenuation_k = 0.12;  // per meter of depth
};

// Nearest sphere of the matching type intersected by the ray within range,
// by analytic ray-sphere intersection. Occlusion by other types is ignored.
// exclude_org_id skips the sensing organism itself.
std::optional<std::pair<double, std::string>> ray_cast(const WorldState& world, const Vec3& origin,
                                                       const Vec3& direction, double range,
                                                       const std::string& type_filter,
                                                       int exclude_org_id = -1);

// Sum over matching emitters within range of 1/(1 + d^2), d = center distance.
double smell_at(const WorldState& world, const Vec3& position, const std::string& target,
                double range, int exclude_org_id = -1);

// surface(t) * exp(-k * depth); surface(t) = max(0, sin(2*pi*tick/period)),
// depth measured from the top z plane. In [0,1].
double light_intensity(const LightModel& light, const Space& space, const Vec3& position,
                       long tick);

// Full observation in declaration order; one scalar per sensor entry.
void read_sensors(const WorldState& world, const Organism& org, Observation& out);

// Evaluates only the sensors feeding nonzero happiness weights and returns the
// happiness value; identical to happiness(net, read_sensors(...)) by
// construction.
double read_happiness(const WorldState& world, const Organism& org);

// Ray fan directions for a species' vision sensor: evenly spaced across the
// half-plane around the heading (horizontal in 2-D, vertical in 3-D).
std::vector<Vec3> vision_fan(const Vec3& heading, int rays, int dims);

}  // namespace ecosim
