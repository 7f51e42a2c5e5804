#include "quaydeck/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "quaydeck/rng.hpp"
#include "quaydeck/scenario.hpp"
#include "quaydeck/stats.hpp"

namespace quaydeck {

namespace {

int worker_count() {
    if (const char* env = std::getenv("QUAYDECK_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_double(double x) {
    if (std::isnan(x))
        return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

} // namespace

BenchResult run_bench(const BenchPlan& plan) {
    struct Cell {
        int scenario_id;
        StrategyKind strategy;
        int rep;
    };
    std::vector<Cell> cells;
    for (int scenario : plan.scenario_ids)
        for (StrategyKind strategy : plan.strategies)
            for (int rep = 0; rep < plan.repetitions; ++rep)
                cells.push_back({scenario, strategy, rep});

    std::vector<RunRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size())
                return;
            const Cell& cell = cells[i];

            ScenarioConfig config = preset(cell.scenario_id);
            config.seed = plan.base_seed + static_cast<std::uint64_t>(cell.rep);
            const auto [instance_plan, yard] = generate_instance(config);

            GAParams params = plan.ga;
            params.seed = derive_seed(plan.base_seed, static_cast<std::uint64_t>(cell.scenario_id),
                                      static_cast<std::uint64_t>(cell.strategy) + 1,
                                      static_cast<std::uint64_t>(cell.rep));
            auto solved = solve(cell.strategy, instance_plan, yard, params, plan.timing);

            RunRecord record;
            record.scenario_id = cell.scenario_id;
            record.num_stacks = config.num_stacks;
            record.max_height = config.max_ship_height;
            record.strategy = cell.strategy;
            record.rep = cell.rep;
            record.instance_seed = config.seed;
            record.cost = std::move(solved.cost);
            record.minutes = record.cost.total_seconds / 60.0;
            record.history = std::move(solved.history);
            records[i] = std::move(record);
        }
    };

    const int workers = std::min<int>(worker_count(), static_cast<int>(cells.size()) > 0
                                                          ? static_cast<int>(cells.size())
                                                          : 1);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();

    BenchResult result;
    result.runs = std::move(records);

    // Paired reports per scenario: every strategy against the proposed one.
    for (int scenario : plan.scenario_ids) {
        std::map<StrategyKind, std::vector<double>> minutes;
        int stacks = 0, height = 0;
        for (const auto& record : result.runs) {
            if (record.scenario_id != scenario)
                continue;
            minutes[record.strategy].push_back(record.minutes);
            stacks = record.num_stacks;
            height = record.max_height;
        }
        const bool have_reference = minutes.count(StrategyKind::QcdcDrGa) > 0;
        for (StrategyKind strategy : plan.strategies) {
            const auto& xs = minutes[strategy];
            if (xs.empty())
                continue;
            StrategyReport report;
            report.scenario_id = scenario;
            report.num_stacks = stacks;
            report.max_height = height;
            report.strategy = strategy;
            report.min_minutes = *std::min_element(xs.begin(), xs.end());
            report.max_minutes = *std::max_element(xs.begin(), xs.end());
            report.mean_minutes = mean(xs);
            report.sd_minutes = xs.size() > 1 ? sample_sd(xs) : 0.0;
            report.pearson = report.t_statistic = report.p_value = kNaN;
            report.significant = false;
            report.improvement_pct = kNaN;
            if (have_reference && strategy != StrategyKind::QcdcDrGa && xs.size() >= 2) {
                const PairedSample sample{minutes[StrategyKind::QcdcDrGa], xs};
                try {
                    const auto test = paired_t_test(sample, plan.significance);
                    report.pearson = test.pearson_r;
                    report.t_statistic = test.t_statistic;
                    report.p_value = test.p_value;
                    report.significant = test.significant;
                } catch (const ZeroVariance&) {
                    // degenerate pairing: leave the test columns empty
                }
                report.improvement_pct =
                    improvement_pct(report.mean_minutes,
                                    mean(minutes[StrategyKind::QcdcDrGa]));
            }
            result.report.push_back(report);
        }
    }
    return result;
}

void write_runs_csv(std::ostream& out, const BenchResult& result) {
    out << "scenario,stacks,max_height,strategy,rep,instance_seed,singles,duals,rehandles,"
           "total_seconds,minutes\n";
    for (const auto& r : result.runs)
        out << r.scenario_id << ',' << r.num_stacks << ',' << r.max_height << ','
            << strategy_name(r.strategy) << ',' << r.rep << ',' << r.instance_seed << ','
            << r.cost.singles << ',' << r.cost.duals << ',' << r.cost.rehandles << ','
            << r.cost.total_seconds << ',' << csv_double(r.minutes) << '\n';
}

void write_report_csv(std::ostream& out, const BenchResult& result) {
    out << "scenario,stacks,max_height,strategy,min,max,mean,sd,r,t,p,significant,"
           "improvement_pct\n";
    for (const auto& r : result.report) {
        out << r.scenario_id << ',' << r.num_stacks << ',' << r.max_height << ','
            << strategy_name(r.strategy) << ',' << csv_double(r.min_minutes) << ','
            << csv_double(r.max_minutes) << ',' << csv_double(r.mean_minutes) << ','
            << csv_double(r.sd_minutes) << ',' << csv_double(r.pearson) << ','
            << csv_double(r.t_statistic) << ',' << csv_double(r.p_value) << ','
            << (std::isnan(r.t_statistic) ? "" : (r.significant ? "yes" : "no")) << ','
            << csv_double(r.improvement_pct) << '\n';
    }
}

void write_history_csv(std::ostream& out, const BenchResult& result) {
    out << "scenario,strategy,rep,generation,best_cost_s,mean_cost_s\n";
    for (const auto& r : result.runs)
        for (const auto& h : r.history)
            out << r.scenario_id << ',' << strategy_name(r.strategy) << ',' << r.rep << ','
                << h.generation << ',' << csv_double(h.best_seconds) << ','
                << csv_double(h.mean_seconds) << '\n';
}

void write_plot_csv(std::ostream& out, const BenchResult& result) {
    out << "strategy,stacks,mean_minutes\n";
    for (const auto& r : result.report)
        out << strategy_name(r.strategy) << ',' << r.num_stacks << ','
            << csv_double(r.mean_minutes) << '\n';
}

} // namespace quaydeck
