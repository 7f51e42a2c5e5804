#pragma once

#include <string>
#include <utility>

#include "quaydeck/model.hpp"

namespace quaydeck {

/// Instance schema:
///   { "plan": { "max_height": int,
///               "stacks": [ { "stay": int, "unload": int, "load": ["3A", ...] } ] },
///     "yard": { "cap": int, "stacks": [ ["b" | "<tag>", ...] ] } }
/// Yard slots are listed bottom-up; "b" marks a foreign container.
std::string instance_to_json(const ShipRowPlan& plan, const YardState& yard);
std::pair<ShipRowPlan, YardState> instance_from_json(const std::string& text);

void save_instance(const std::string& path, const ShipRowPlan& plan, const YardState& yard);
std::pair<ShipRowPlan, YardState> load_instance(const std::string& path);

/// Chromosome schema: { "unload_seq": [2,1,...], "yard": { ... } }
std::string chromosome_to_json(const Chromosome& chromosome);
Chromosome chromosome_from_json(const std::string& text);

std::string cost_to_json(const CostBreakdown& cost);
CostBreakdown cost_from_json(const std::string& text);

} // namespace quaydeck
