#pragma once

#include <string>

#include "quaydeck/ga.hpp"
#include "quaydeck/model.hpp"

namespace quaydeck {

/// The comparison set: the proposed hybrid optimizer plus the four reference
/// strategies it is benchmarked against.
enum class StrategyKind {
    QcdcDrGa,        // full hybrid: 1D sequence + 2D yard, full cost
    GreedyUpperBound, // descending-unload-count sequence, template yard
    BiLevelQcdc,     // 1D GA, cycle-time objective, rehandles ignored during search
    IlsrsScenario1,  // 1D GA with dual cycling, yard fixed, full cost
    IlsrsScenario2,  // 2D GA + local search, ship-order sequence, single cycling
};

/// CLI names: qcdc-dr-ga | greedy | bilevel | ilsrs1 | ilsrs2
std::string strategy_name(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(const std::string& name);

/// Unloading order by descending U_c; ties keep the lower stack index first.
std::vector<int> greedy_sequence(const ShipRowPlan& plan);

struct StrategyResult {
    Chromosome chromosome;
    CostBreakdown cost; // reported by the shared evaluator
    std::vector<GenerationStats> history; // empty for the greedy strategy
};

/// Runs one strategy on one instance. Every strategy is scored by the same
/// evaluate() with the same timing so results are directly comparable;
/// IlsrsScenario2 reports its cost in single-cycle mode (w_d = 0 always).
StrategyResult solve(StrategyKind kind, const ShipRowPlan& plan, const YardState& yard_template,
                     const GAParams& params, TimingParams timing);

} // namespace quaydeck
