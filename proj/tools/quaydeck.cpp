// quaydeck: generate, solve, benchmark and validate ship-row
// unloading/loading instances.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quaydeck/bench.hpp"
#include "quaydeck/json_io.hpp"
#include "quaydeck/scenario.hpp"

namespace fs = std::filesystem;
using namespace quaydeck;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoi(item));
    return out;
}

std::vector<StrategyKind> parse_strategy_list(const std::string& text) {
    std::vector<StrategyKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        const auto kind = parse_strategy(item);
        if (!kind)
            throw CLI::ValidationError("--strategies", "unknown strategy '" + item + "'");
        out.push_back(*kind);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaydeck: quay-crane dual-cycling and yard-rehandle optimizer"};
    app.require_subcommand(1);

    TimingParams timing;
    GAParams ga_defaults;
    GAParams ga_flags;
    std::string ga_config_path;
    app.add_option("--alpha", timing.alpha, "single-cycle seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--beta", timing.beta, "dual-cycle seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--gamma", timing.gamma, "rehandle seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--ga-config", ga_config_path, "GA parameters, key=value file");
    // Individual GA flags override the config file.
    auto* opt_population =
        app.add_option("--population", ga_flags.population_size)->check(CLI::Range(2, 1 << 20));
    auto* opt_crossover =
        app.add_option("--crossover-rate", ga_flags.crossover_rate)->check(CLI::Range(0.0, 1.0));
    auto* opt_mutation =
        app.add_option("--mutation-rate", ga_flags.mutation_rate)->check(CLI::Range(0.0, 1.0));
    auto* opt_elite =
        app.add_option("--elite-fraction", ga_flags.elite_fraction)->check(CLI::Range(0.0, 1.0));
    auto* opt_generations =
        app.add_option("--max-generations", ga_flags.max_generations)->check(CLI::NonNegativeNumber);
    auto* opt_stagnation =
        app.add_option("--stagnation", ga_flags.stagnation_limit)->check(CLI::PositiveNumber);

    // generate
    auto* generate_cmd = app.add_subcommand("generate", "write a benchmark instance as JSON");
    int gen_scenario = 6;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "instance.json";
    int gen_yard_stacks = 0;
    generate_cmd->add_option("--scenario", gen_scenario, "preset id 1..6")->required();
    generate_cmd->add_option("--seed", gen_seed, "generator seed");
    generate_cmd->add_option("--yard-stacks", gen_yard_stacks, "yard width override");
    generate_cmd->add_option("-o,--out", gen_out, "output path")->capture_default_str();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run one strategy on an instance");
    std::string solve_instance;
    std::string solve_strategy = "qcdc-dr-ga";
    std::uint64_t solve_seed = 0;
    std::string solve_out_dir = ".";
    solve_cmd->add_option("instance", solve_instance, "instance JSON")->required();
    solve_cmd->add_option("--strategy", solve_strategy,
                          "qcdc-dr-ga | greedy | bilevel | ilsrs1 | ilsrs2")
        ->capture_default_str();
    solve_cmd->add_option("--seed", solve_seed, "optimizer seed");
    solve_cmd->add_option("-o,--out-dir", solve_out_dir, "output directory")
        ->capture_default_str();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "paired benchmark across scenarios");
    std::string bench_scenarios = "6";
    std::string bench_strategies = "greedy,qcdc-dr-ga";
    int bench_reps = 20;
    std::uint64_t bench_seed = 1;
    double bench_significance = 0.05;
    std::string bench_out_dir = "bench-out";
    bench_cmd->add_option("--scenarios", bench_scenarios, "comma list of preset ids")
        ->capture_default_str();
    bench_cmd->add_option("--strategies", bench_strategies, "comma list of strategies")
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench_reps, "paired repetitions")->capture_default_str();
    bench_cmd->add_option("--seed", bench_seed, "base seed")->capture_default_str();
    bench_cmd->add_option("--significance", bench_significance, "t-test alpha")
        ->capture_default_str();
    bench_cmd->add_option("-o,--out-dir", bench_out_dir, "output directory")
        ->capture_default_str();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "check an instance file");
    std::string validate_instance_path;
    validate_cmd->add_option("instance", validate_instance_path, "instance JSON")->required();

    // Global options (timing, GA config) may appear after the subcommand.
    for (auto* sub : {generate_cmd, solve_cmd, bench_cmd, validate_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints the synopsis or help text
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        GAParams ga = ga_config_path.empty() ? ga_defaults
                                             : load_ga_config(ga_config_path, ga_defaults);
        if (opt_population->count())
            ga.population_size = ga_flags.population_size;
        if (opt_crossover->count())
            ga.crossover_rate = ga_flags.crossover_rate;
        if (opt_mutation->count())
            ga.mutation_rate = ga_flags.mutation_rate;
        if (opt_elite->count())
            ga.elite_fraction = ga_flags.elite_fraction;
        if (opt_generations->count())
            ga.max_generations = ga_flags.max_generations;
        if (opt_stagnation->count())
            ga.stagnation_limit = ga_flags.stagnation_limit;

        if (generate_cmd->parsed()) {
            ScenarioConfig config;
            try {
                config = preset(gen_scenario);
            } catch (const std::out_of_range& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            config.seed = gen_seed;
            if (gen_yard_stacks > 0)
                config.yard_stacks = gen_yard_stacks;
            const auto [plan, yard] = generate_instance(config);
            save_instance(gen_out, plan, yard);
            std::cout << "wrote " << gen_out << " (" << plan.num_stacks() << " stacks, "
                      << plan.load_tags().size() << " load tags)\n";
            return kExitOk;
        }

        if (validate_cmd->parsed()) {
            const auto [plan, yard] = load_instance(validate_instance_path);
            const auto violations = validate_instance(plan, yard);
            for (const auto& v : violations)
                std::cout << validate_instance_path << ": " << v.message << "\n";
            if (!violations.empty())
                return kExitInfeasible;
            std::cout << validate_instance_path << ": ok\n";
            return kExitOk;
        }

        if (solve_cmd->parsed()) {
            const auto kind = parse_strategy(solve_strategy);
            if (!kind) {
                std::cerr << "error: unknown strategy '" << solve_strategy << "'\n";
                return kExitUsage;
            }
            const auto [plan, yard] = load_instance(solve_instance);
            const auto violations = validate_instance(plan, yard);
            if (!violations.empty()) {
                for (const auto& v : violations)
                    std::cerr << solve_instance << ": " << v.message << "\n";
                return kExitInfeasible;
            }
            ga.seed = solve_seed;
            const auto result = solve(*kind, plan, yard, ga, timing);

            fs::create_directories(solve_out_dir);
            const fs::path dir(solve_out_dir);
            write_file(dir / "chromosome.json", chromosome_to_json(result.chromosome));
            write_file(dir / "cost.json", cost_to_json(result.cost));
            {
                const auto [cost, trace] =
                    evaluate_traced(plan, result.chromosome, timing,
                                    EvalOptions{*kind != StrategyKind::IlsrsScenario2});
                std::ofstream trace_out(dir / "trace.csv");
                write_trace_csv(trace_out, trace);
                (void)cost;
            }
            if (!result.history.empty()) {
                std::ofstream history_out(dir / "history.csv");
                write_history_csv(history_out, result.history);
            }
            std::cout << strategy_name(*kind) << ": " << result.cost.total_seconds << " s ("
                      << result.cost.singles << " singles, " << result.cost.duals << " duals, "
                      << result.cost.rehandles << " rehandles)\n";
            return kExitOk;
        }

        if (bench_cmd->parsed()) {
            BenchPlan plan;
            plan.scenario_ids = parse_int_list(bench_scenarios);
            plan.strategies = parse_strategy_list(bench_strategies);
            plan.repetitions = bench_reps;
            plan.base_seed = bench_seed;
            plan.timing = timing;
            plan.ga = ga;
            plan.significance = bench_significance;
            if (plan.scenario_ids.empty() || plan.strategies.empty()) {
                std::cerr << "error: need at least one scenario and one strategy\n";
                return kExitUsage;
            }
            for (int id : plan.scenario_ids)
                preset(id); // reject bad ids before doing any work

            const auto result = run_bench(plan);
            fs::create_directories(bench_out_dir);
            const fs::path dir(bench_out_dir);
            {
                std::ofstream out(dir / "runs.csv");
                write_runs_csv(out, result);
            }
            {
                std::ofstream out(dir / "report.csv");
                write_report_csv(out, result);
            }
            {
                std::ofstream out(dir / "history.csv");
                write_history_csv(out, result);
            }
            {
                std::ofstream out(dir / "plot.csv");
                write_plot_csv(out, result);
            }
            std::cout << "wrote " << (dir / "runs.csv") << ", report.csv, history.csv, plot.csv\n";
            for (const auto& r : result.report)
                std::cout << "scenario " << r.scenario_id << " " << strategy_name(r.strategy)
                          << ": mean " << r.mean_minutes << " min\n";
            return kExitOk;
        }
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    return kExitUsage;
}
