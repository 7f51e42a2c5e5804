#include "quaydeck/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace quaydeck {

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::QcdcDrGa: return "qcdc-dr-ga";
    case StrategyKind::GreedyUpperBound: return "greedy";
    case StrategyKind::BiLevelQcdc: return "bilevel";
    case StrategyKind::IlsrsScenario1: return "ilsrs1";
    case StrategyKind::IlsrsScenario2: return "ilsrs2";
    }
    return "?";
}

std::optional<StrategyKind> parse_strategy(const std::string& name) {
    for (StrategyKind kind :
         {StrategyKind::QcdcDrGa, StrategyKind::GreedyUpperBound, StrategyKind::BiLevelQcdc,
          StrategyKind::IlsrsScenario1, StrategyKind::IlsrsScenario2})
        if (strategy_name(kind) == name)
            return kind;
    return std::nullopt;
}

std::vector<int> greedy_sequence(const ShipRowPlan& plan) {
    std::vector<int> seq(static_cast<std::size_t>(plan.num_stacks()));
    std::iota(seq.begin(), seq.end(), 1);
    std::stable_sort(seq.begin(), seq.end(), [&plan](int a, int b) {
        return plan.stacks[static_cast<std::size_t>(a - 1)].unload >
               plan.stacks[static_cast<std::size_t>(b - 1)].unload;
    });
    return seq;
}

StrategyResult solve(StrategyKind kind, const ShipRowPlan& plan, const YardState& yard_template,
                     const GAParams& params, TimingParams timing) {
    StrategyResult result;
    switch (kind) {
    case StrategyKind::GreedyUpperBound: {
        result.chromosome = Chromosome{greedy_sequence(plan), yard_template};
        result.cost = evaluate(plan, result.chromosome, timing);
        return result;
    }
    case StrategyKind::QcdcDrGa: {
        auto ga = run(plan, yard_template, params, timing, RunOptions{});
        result.chromosome = std::move(ga.best);
        result.cost = std::move(ga.best_cost);
        result.history = std::move(ga.history);
        return result;
    }
    case StrategyKind::BiLevelQcdc: {
        // Sequence-only GA that never sees the rehandle term while searching;
        // the reported cost still includes it.
        RunOptions options;
        options.evolve_yard = false;
        options.rehandle_free_objective = true;
        auto ga = run(plan, yard_template, params, timing, options);
        result.chromosome = std::move(ga.best);
        result.cost = evaluate(plan, result.chromosome, timing);
        result.history = std::move(ga.history);
        return result;
    }
    case StrategyKind::IlsrsScenario1: {
        RunOptions options;
        options.evolve_yard = false;
        auto ga = run(plan, yard_template, params, timing, options);
        result.chromosome = std::move(ga.best);
        result.cost = std::move(ga.best_cost);
        result.history = std::move(ga.history);
        return result;
    }
    case StrategyKind::IlsrsScenario2: {
        RunOptions options;
        options.evolve_unload_seq = false;
        options.single_cycle = true;
        options.elite_local_search = true;
        auto ga = run(plan, yard_template, params, timing, options);
        result.chromosome = std::move(ga.best);
        result.cost = std::move(ga.best_cost);
        result.history = std::move(ga.history);
        return result;
    }
    }
    throw std::logic_error("unreachable strategy kind");
}

} // namespace quaydeck
