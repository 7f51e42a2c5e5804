#pragma once

#include <cstdint>
#include <utility>

#include "quaydeck/model.hpp"

namespace quaydeck {

struct ScenarioConfig {
    int num_stacks = 5;
    int max_ship_height = 4;
    int yard_cap = 6;
    int yard_stacks = 0;          // 0 = ceil(total load tags / 3) + 2
    double stay_probability = 0.3; // per stack, stay count in {1,2} when drawn
    double fill_density = 0.8;     // fraction of available height used
    std::uint64_t seed = 0;
};

/// The six benchmark configurations: (stacks, max height) =
/// (30,10) (25,10) (20,10) (15,8) (10,5) (5,4), yard cap 6.
/// Throws std::out_of_range for ids outside 1..6.
ScenarioConfig preset(int scenario_id);

/// Deterministic instance generator: per-stack stays at the bottom, unload
/// and load counts near fill_density of the remaining height, load tags
/// dealt randomly across the yard above random foreign bases. The result
/// always passes validate_instance; identical seeds give identical
/// instances. Throws std::runtime_error when the yard cannot hold the tags.
std::pair<ShipRowPlan, YardState> generate_instance(const ScenarioConfig& config);

} // namespace quaydeck
