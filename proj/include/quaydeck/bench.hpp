#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quaydeck/baselines.hpp"
#include "quaydeck/ga.hpp"
#include "quaydeck/model.hpp"

namespace quaydeck {

/// Batch benchmark description. Repetition k of every strategy shares the
/// instance generated from base_seed + k, which is what makes the t-test
/// paired.
struct BenchPlan {
    std::vector<int> scenario_ids;
    std::vector<StrategyKind> strategies;
    int repetitions = 20;
    std::uint64_t base_seed = 1;
    TimingParams timing;
    GAParams ga;
    double significance = 0.05;
};

/// One benchmark cell result.
struct RunRecord {
    int scenario_id;
    int num_stacks;
    int max_height;
    StrategyKind strategy;
    int rep;
    std::uint64_t instance_seed;
    CostBreakdown cost;
    double minutes;
    std::vector<GenerationStats> history;
};

struct StrategyReport {
    int scenario_id;
    int num_stacks;
    int max_height;
    StrategyKind strategy;
    double min_minutes, max_minutes, mean_minutes, sd_minutes;
    // Paired comparison against QcdcDrGa; NaN when not applicable.
    double pearson, t_statistic, p_value;
    bool significant;
    double improvement_pct;
};

struct BenchResult {
    std::vector<RunRecord> runs;      // canonical order: scenario, strategy, rep
    std::vector<StrategyReport> report;
};

/// Runs the whole grid. Cells fan out to a worker pool capped by the
/// QUAYDECK_THREADS environment variable (read at call time); output order
/// and content do not depend on the worker count.
BenchResult run_bench(const BenchPlan& plan);

void write_runs_csv(std::ostream& out, const BenchResult& result);
void write_report_csv(std::ostream& out, const BenchResult& result);
void write_history_csv(std::ostream& out, const BenchResult& result);
/// Mean operation time (minutes) against the number of stacks, per strategy.
void write_plot_csv(std::ostream& out, const BenchResult& result);

} // namespace quaydeck
