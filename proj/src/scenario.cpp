#include "quaydeck/scenario.hpp"

#include <algorithm>
#include <stdexcept>

#include "quaydeck/rng.hpp"

namespace quaydeck {

ScenarioConfig preset(int scenario_id) {
    static constexpr std::pair<int, int> kPresets[6] = {
        {30, 10}, {25, 10}, {20, 10}, {15, 8}, {10, 5}, {5, 4},
    };
    if (scenario_id < 1 || scenario_id > 6)
        throw std::out_of_range("unknown scenario id " + std::to_string(scenario_id) +
                                " (expected 1..6)");
    ScenarioConfig config;
    config.num_stacks = kPresets[scenario_id - 1].first;
    config.max_ship_height = kPresets[scenario_id - 1].second;
    config.yard_cap = 6;
    return config;
}

std::pair<ShipRowPlan, YardState> generate_instance(const ScenarioConfig& config) {
    if (config.num_stacks < 1 || config.max_ship_height < 1 || config.yard_cap < 1)
        throw std::invalid_argument("scenario config: counts must be positive");

    Rng rng(config.seed);

    ShipRowPlan plan;
    plan.max_height = config.max_ship_height;
    plan.stacks.resize(static_cast<std::size_t>(config.num_stacks));

    auto near_full_count = [&](int available) {
        if (available <= 0)
            return 0;
        // Around fill_density of the free height, jittered one slot down.
        const int target = static_cast<int>(config.fill_density * available + 0.5);
        const int lo = std::max(0, target - 1);
        return lo + rng.index_int(available - lo + 1);
    };

    for (std::size_t c = 0; c < plan.stacks.size(); ++c) {
        auto& stack = plan.stacks[c];
        if (rng.real01() < config.stay_probability)
            stack.stay = 1 + rng.index_int(2);
        const int available = config.max_ship_height - stack.stay;
        stack.unload = near_full_count(available);
        const int loads = near_full_count(available);
        for (int t = 1; t <= loads; ++t)
            stack.load.push_back(ContainerTag{static_cast<int>(c) + 1, t});
    }

    auto tags = plan.load_tags();
    const int total_tags = static_cast<int>(tags.size());
    const int width = config.yard_stacks > 0 ? config.yard_stacks : (total_tags + 2) / 3 + 2;

    YardState yard;
    yard.cap = config.yard_cap;
    yard.stacks.resize(static_cast<std::size_t>(width));

    // Foreign bases first: up to two per stack, kept sparse enough that the
    // ship-bound tags always fit.
    int free_slots = width * config.yard_cap - total_tags;
    if (free_slots < 0)
        throw std::runtime_error("yard too small: " + std::to_string(total_tags) +
                                 " tags for " + std::to_string(width * config.yard_cap) +
                                 " slots");
    const int reserve = std::max(1, width / 4);
    for (auto& stack : yard.stacks) {
        if (free_slots <= reserve)
            break;
        if (rng.real01() < 0.5) {
            const int foreign = std::min(1 + rng.index_int(2), free_slots - reserve);
            for (int k = 0; k < foreign; ++k)
                stack.push_back(std::nullopt);
            free_slots -= foreign;
        }
    }

    rng.shuffle(tags);
    for (const auto& tag : tags) {
        int room = 0;
        for (const auto& stack : yard.stacks)
            if (static_cast<int>(stack.size()) < yard.cap)
                ++room;
        if (room == 0)
            throw std::runtime_error("yard generation ran out of capacity");
        int pick = rng.index_int(room);
        for (auto& stack : yard.stacks) {
            if (static_cast<int>(stack.size()) >= yard.cap)
                continue;
            if (pick-- == 0) {
                stack.push_back(tag);
                break;
            }
        }
    }

    return {std::move(plan), std::move(yard)};
}

} // namespace quaydeck
