#include <doctest.h>

#include "quaydeck/baselines.hpp"
#include "quaydeck/scenario.hpp"

using namespace quaydeck;

namespace {

GAParams quick_params(std::uint64_t seed) {
    GAParams params;
    params.population_size = 30;
    params.max_generations = 120;
    params.stagnation_limit = 30;
    params.seed = seed;
    return params;
}

} // namespace

TEST_CASE("strategy names round-trip") {
    for (StrategyKind kind :
         {StrategyKind::QcdcDrGa, StrategyKind::GreedyUpperBound, StrategyKind::BiLevelQcdc,
          StrategyKind::IlsrsScenario1, StrategyKind::IlsrsScenario2})
        CHECK(parse_strategy(strategy_name(kind)) == kind);
    CHECK(!parse_strategy("nonsense"));
}

TEST_CASE("greedy sequence sorts by unload count, stable on ties") {
    ShipRowPlan plan;
    plan.max_height = 6;
    plan.stacks.resize(3);
    plan.stacks[0].unload = 2;
    plan.stacks[1].unload = 5;
    plan.stacks[2].unload = 3;
    CHECK(greedy_sequence(plan) == std::vector<int>{2, 3, 1});

    for (auto& stack : plan.stacks)
        stack.unload = 4;
    CHECK(greedy_sequence(plan) == std::vector<int>{1, 2, 3});
}

TEST_CASE("all strategies return valid chromosomes") {
    ScenarioConfig config = preset(6);
    config.seed = 17;
    const auto [plan, yard] = generate_instance(config);
    for (StrategyKind kind :
         {StrategyKind::QcdcDrGa, StrategyKind::GreedyUpperBound, StrategyKind::BiLevelQcdc,
          StrategyKind::IlsrsScenario1, StrategyKind::IlsrsScenario2}) {
        CAPTURE(strategy_name(kind));
        const auto result = solve(kind, plan, yard, quick_params(5), TimingParams{});
        CHECK(validate_chromosome(plan, result.chromosome).empty());
        CHECK(result.cost.total_seconds > 0.0);
    }
}

TEST_CASE("single-cycle scenario never reports dual cycles") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        ScenarioConfig config = preset(6);
        config.seed = seed;
        const auto [plan, yard] = generate_instance(config);
        const auto result =
            solve(StrategyKind::IlsrsScenario2, plan, yard, quick_params(seed), TimingParams{});
        CHECK(result.cost.duals == 0);
        CHECK(result.chromosome.unload_seq.front() == 1); // ship order, fixed
    }
}

TEST_CASE("sequence-only strategies keep the template yard") {
    ScenarioConfig config = preset(6);
    config.seed = 23;
    const auto [plan, yard] = generate_instance(config);
    for (StrategyKind kind : {StrategyKind::BiLevelQcdc, StrategyKind::IlsrsScenario1}) {
        const auto result = solve(kind, plan, yard, quick_params(11), TimingParams{});
        CHECK(result.chromosome.yard.tags_sorted() == yard.tags_sorted());
        REQUIRE(result.chromosome.yard.num_stacks() == yard.num_stacks());
        for (int i = 0; i < yard.num_stacks(); ++i)
            CHECK(result.chromosome.yard.stacks[static_cast<std::size_t>(i)] ==
                  yard.stacks[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("rehandle-free yards make bilevel and ilsrs1 objectives coincide") {
    // A plan whose yard holds every tag on its own stack: zero rehandles
    // under any sequence, so both 1D strategies optimize the same function.
    ShipRowPlan plan;
    plan.max_height = 6;
    plan.stacks.resize(3);
    plan.stacks[0] = {0, 2, {{1, 1}}};
    plan.stacks[1] = {0, 3, {{2, 1}}};
    plan.stacks[2] = {0, 1, {{3, 1}}};
    YardState yard;
    yard.cap = 6;
    yard.stacks = {{ContainerTag{1, 1}}, {ContainerTag{2, 1}}, {ContainerTag{3, 1}}};

    const auto bilevel = solve(StrategyKind::BiLevelQcdc, plan, yard, quick_params(2), TimingParams{});
    const auto ilsrs1 =
        solve(StrategyKind::IlsrsScenario1, plan, yard, quick_params(2), TimingParams{});
    CHECK(bilevel.cost.rehandles == 0);
    CHECK(ilsrs1.cost.rehandles == 0);
    CHECK(bilevel.cost.total_seconds == doctest::Approx(ilsrs1.cost.total_seconds));
}

TEST_CASE("greedy never beats the full optimizer") {
    int greedy_wins = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        ScenarioConfig config = preset(6);
        config.seed = 100 + seed;
        const auto [plan, yard] = generate_instance(config);
        const auto greedy =
            solve(StrategyKind::GreedyUpperBound, plan, yard, quick_params(seed), TimingParams{});
        GAParams params = quick_params(seed);
        params.population_size = 60;
        const auto best = solve(StrategyKind::QcdcDrGa, plan, yard, params, TimingParams{});
        if (greedy.cost.total_seconds < best.cost.total_seconds)
            ++greedy_wins;
    }
    CHECK(greedy_wins == 0);
}
