#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "quaydeck/sim.hpp"

using namespace quaydeck;

namespace {

YardState yard_of(std::vector<std::vector<const char*>> cells, int cap) {
    YardState yard;
    yard.cap = cap;
    for (const auto& stack : cells) {
        std::vector<YardSlot> slots;
        for (const char* name : stack) {
            if (std::string(name) == "b")
                slots.push_back(std::nullopt);
            else
                slots.push_back(*parse_tag(name));
        }
        yard.stacks.push_back(std::move(slots));
    }
    return yard;
}

std::vector<ContainerTag> loads_of(int stack, int count) {
    std::vector<ContainerTag> tags;
    for (int t = 1; t <= count; ++t)
        tags.push_back({stack, t});
    return tags;
}

/// The worked four-stack row example: stacks 1..4 unload {3,3,2,2} containers
/// above {2,0,2,2} staying ones and load back {2,4,1,3}.
ShipRowPlan worked_example_plan() {
    ShipRowPlan plan;
    plan.max_height = 5;
    plan.stacks.resize(4);
    plan.stacks[0] = {2, 3, loads_of(1, 2)};
    plan.stacks[1] = {0, 3, loads_of(2, 4)};
    plan.stacks[2] = {2, 2, loads_of(3, 1)};
    plan.stacks[3] = {2, 2, loads_of(4, 3)};
    return plan;
}

YardState worked_example_yard() {
    return yard_of({{"b", "b", "2A", "2B"},
                    {"b", "2C", "4A"},
                    {"b", "1A", "1B", "3A"},
                    {"b", "b", "4C", "4B", "2D"}},
                   6);
}

} // namespace

TEST_CASE("nearest lowest stack: unique minimum wins") {
    const auto yard = yard_of({{"b", "b", "b"}, {"b"}, {"b", "b", "b"}}, 6);
    CHECK(nearest_lowest_stack(yard, 0) == 1);
}

TEST_CASE("nearest lowest stack: height tie broken by distance, then index") {
    const auto yard = yard_of({{"b", "b"}, {"b"}, {"b"}}, 6);
    CHECK(nearest_lowest_stack(yard, 0) == 1);
    // Equal height and distance: lower index.
    const auto yard2 = yard_of({{"b"}, {"b", "b"}, {"b"}}, 6);
    CHECK(nearest_lowest_stack(yard2, 1) == 0);
}

TEST_CASE("nearest lowest stack: full neighbours raise NoCapacity") {
    const auto yard = yard_of({{"b", "b", "b", "b", "b", "b"},
                               {"b", "b", "b", "b", "b", "b"},
                               {"b", "b"}},
                              6);
    CHECK_THROWS_AS((void)nearest_lowest_stack(yard, 2), SimError);
}

TEST_CASE("calculate_rehandles counts exactly the blockers above the target") {
    auto yard = yard_of({{"b", "1A"}, {}}, 6);
    CHECK(calculate_rehandles(yard, {1, 1}).rehandles == 0);

    yard = yard_of({{"1A", "2A", "3A"}, {}, {}}, 6);
    const auto result = calculate_rehandles(yard, {1, 1});
    CHECK(result.rehandles == 2);
    CHECK(result.source_stack == 0);
    CHECK(yard.stacks[0].empty());

    yard = yard_of({{"2A"}}, 6);
    CHECK_THROWS_AS((void)calculate_rehandles(yard, {1, 1}), SimError);
}

TEST_CASE("unload_first_stack counts singles and spares the staying containers") {
    ShipRowPlan plan;
    plan.max_height = 5;
    plan.stacks.resize(2);
    plan.stacks[0] = {1, 4, {}};
    plan.stacks[1] = {0, 1, loads_of(2, 1)};
    const auto yard = yard_of({{"2A"}}, 6);

    SimState sim(plan, {{1, 2}, yard}, TimingParams{});
    sim.unload_first_stack();
    auto cost = sim.finish();
    CHECK(cost.singles == 4);

    plan.stacks[0].unload = 0;
    SimState sim2(plan, {{1, 2}, yard}, TimingParams{});
    sim2.unload_first_stack();
    cost = sim2.finish();
    CHECK(cost.singles == 0);
}

TEST_CASE("worked example first stack unloads 3 singles") {
    SimState sim(worked_example_plan(), {{1, 2, 3, 4}, worked_example_yard()}, TimingParams{});
    sim.unload_first_stack();
    CHECK(sim.finish().singles == 3);
}

TEST_CASE("loading_operation refuses to load before any stack finished unloading") {
    SimState sim(worked_example_plan(), {{1, 2, 3, 4}, worked_example_yard()}, TimingParams{});
    const auto step = sim.loading_operation();
    CHECK(!step.loaded);
    CHECK(step.rehandles == 0);
}

TEST_CASE("loading_operation loads bottom-up from the yard") {
    ShipRowPlan plan;
    plan.max_height = 4;
    plan.stacks.resize(1);
    plan.stacks[0] = {0, 0, loads_of(1, 2)};
    const auto yard = yard_of({{"1A", "1B"}, {}}, 6);

    SimState sim(plan, {{1}, yard}, TimingParams{});
    // 1A is under 1B: one forced shift.
    auto step = sim.loading_operation();
    CHECK(step.loaded);
    CHECK(step.rehandles == 1);
    step = sim.loading_operation();
    CHECK(step.loaded);
    CHECK(step.rehandles == 0);
    step = sim.loading_operation();
    CHECK(!step.loaded);
}

TEST_CASE("single ship stack never dual-cycles") {
    ShipRowPlan plan;
    plan.max_height = 10;
    plan.stacks.resize(1);
    plan.stacks[0] = {0, 4, loads_of(1, 3)};
    const auto yard = yard_of({{"1A"}, {"1B"}, {"1C"}}, 6);

    const auto cost = evaluate(plan, {{1}, yard}, TimingParams{});
    CHECK(cost.singles == 7);
    CHECK(cost.duals == 0);
    CHECK(cost.rehandles == 0);
}

TEST_CASE("worked example: loading order C,A,B,D needs exactly 3 rehandles") {
    const Chromosome chromosome{{3, 1, 2, 4}, worked_example_yard()};
    const auto cost = evaluate(worked_example_plan(), chromosome, TimingParams{});
    CHECK(cost.rehandles == 3);
    CHECK(cost.singles == 8);
    CHECK(cost.duals == 6);
    CHECK(cost.total_seconds == doctest::Approx(8 * 90 + 6 * 170 + 3 * 60));
}

TEST_CASE("evaluate matches the frozen replay table on the 3-stack instance") {
    ShipRowPlan plan;
    plan.max_height = 6;
    plan.stacks.resize(3);
    plan.stacks[0] = {0, 2, loads_of(1, 1)};
    plan.stacks[1] = {0, 1, loads_of(2, 2)};
    plan.stacks[2] = {0, 3, loads_of(3, 2)};
    const auto yard = yard_of({{"b", "2B", "1A"}, {"3B"}, {"b", "2A", "3A"}, {}}, 4);

    // (sequence, singles, duals, rehandles) computed by the pre-build replay
    // oracle and frozen here.
    struct Row {
        std::vector<int> seq;
        long singles, duals, rehandles;
    };
    const std::vector<Row> table = {
        {{1, 2, 3}, 3, 4, 1}, {{1, 3, 2}, 5, 3, 0}, {{2, 1, 3}, 3, 4, 2},
        {{2, 3, 1}, 1, 5, 3}, {{3, 1, 2}, 5, 3, 0}, {{3, 2, 1}, 5, 3, 1},
    };
    for (const auto& row : table) {
        CAPTURE(row.seq);
        const auto cost = evaluate(plan, {row.seq, yard}, TimingParams{});
        CHECK(cost.singles == row.singles);
        CHECK(cost.duals == row.duals);
        CHECK(cost.rehandles == row.rehandles);
        // And the independent oracle agrees with itself on the same input.
        const auto counts = testutil::replay(testutil::from_model(plan, yard), row.seq);
        CHECK(counts.singles == row.singles);
        CHECK(counts.duals == row.duals);
        CHECK(counts.rehandles == row.rehandles);
    }
}

TEST_CASE("evaluate agrees with the independent replay oracle on random instances") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto instance = testutil::random_small_instance(seed);
        const auto [plan, yard] = testutil::to_model(instance, 8);
        std::vector<int> seq(static_cast<std::size_t>(plan.num_stacks()));
        for (std::size_t i = 0; i < seq.size(); ++i)
            seq[i] = static_cast<int>(i) + 1;
        std::mt19937_64 rng(seed * 7 + 1);
        std::shuffle(seq.begin(), seq.end(), rng);

        CAPTURE(seed);
        const auto cost = evaluate(plan, {seq, yard}, TimingParams{});
        const auto counts = testutil::replay(instance, seq);
        CHECK(cost.singles == counts.singles);
        CHECK(cost.duals == counts.duals);
        CHECK(cost.rehandles == counts.rehandles);
    }
}

TEST_CASE("conservation, discipline and trace reconciliation") {
    const auto plan = worked_example_plan();
    const Chromosome chromosome{{2, 4, 1, 3}, worked_example_yard()};
    const auto [cost, trace] = evaluate_traced(plan, chromosome, TimingParams{});

    CHECK(cost.singles + 2 * cost.duals == plan.total_unloads() + plan.total_loads());
    CHECK(cost.total_seconds ==
          doctest::Approx(90.0 * cost.singles + 170.0 * cost.duals + 60.0 * cost.rehandles));

    long singles = 0, duals = 0, rehandles = 0;
    double last = 0.0;
    for (const auto& e : trace.events) {
        CHECK(e.timestamp_s >= last);
        last = e.timestamp_s;
        switch (e.kind) {
        case EventKind::SingleUnload:
        case EventKind::SingleLoad: ++singles; break;
        case EventKind::Dual: ++duals; break;
        case EventKind::Rehandle: ++rehandles; break;
        }
    }
    CHECK(singles == cost.singles);
    CHECK(duals == cost.duals);
    CHECK(rehandles == cost.rehandles);

    // A stack's first load never precedes its last unload, a dual count can
    // never exceed either side, and unloading a stack takes at least a
    // single cycle per container.
    CHECK(cost.duals <= std::min(plan.total_unloads(), plan.total_loads()));
    for (int c = 0; c < plan.num_stacks(); ++c) {
        const auto& stack = plan.stacks[static_cast<std::size_t>(c)];
        if (stack.unload > 0)
            CHECK(cost.tu[static_cast<std::size_t>(c)] >= 90.0 * stack.unload);
        if (!stack.load.empty() && stack.unload > 0)
            CHECK(cost.tl[static_cast<std::size_t>(c)] -
                      cost.tu[static_cast<std::size_t>(c)] >=
                  90.0 * static_cast<double>(stack.load.size()));
    }
}

TEST_CASE("scaling the timing scales the total and keeps the counts") {
    const auto plan = worked_example_plan();
    const Chromosome chromosome{{1, 2, 3, 4}, worked_example_yard()};
    const auto base = evaluate(plan, chromosome, TimingParams{90, 170, 60});
    const auto scaled = evaluate(plan, chromosome, TimingParams{180, 340, 120});
    CHECK(scaled.singles == base.singles);
    CHECK(scaled.duals == base.duals);
    CHECK(scaled.rehandles == base.rehandles);
    CHECK(scaled.total_seconds == doctest::Approx(2.0 * base.total_seconds));
}

TEST_CASE("single-cycle mode never pairs") {
    const auto plan = worked_example_plan();
    const Chromosome chromosome{{1, 2, 3, 4}, worked_example_yard()};
    const auto cost = evaluate(plan, chromosome, TimingParams{}, EvalOptions{false});
    CHECK(cost.duals == 0);
    CHECK(cost.singles == plan.total_unloads() + plan.total_loads());
}

TEST_CASE("determinism: identical inputs, identical outputs") {
    const auto plan = worked_example_plan();
    const Chromosome chromosome{{3, 1, 2, 4}, worked_example_yard()};
    const auto [cost_a, trace_a] = evaluate_traced(plan, chromosome, TimingParams{});
    const auto [cost_b, trace_b] = evaluate_traced(plan, chromosome, TimingParams{});
    CHECK(cost_a.total_seconds == cost_b.total_seconds);
    REQUIRE(trace_a.events.size() == trace_b.events.size());
    for (std::size_t i = 0; i < trace_a.events.size(); ++i) {
        CHECK(trace_a.events[i].kind == trace_b.events[i].kind);
        CHECK(trace_a.events[i].timestamp_s == trace_b.events[i].timestamp_s);
    }
}

TEST_CASE("trace CSV has the documented columns") {
    ShipRowPlan plan;
    plan.max_height = 4;
    plan.stacks.resize(1);
    plan.stacks[0] = {0, 1, loads_of(1, 1)};
    const auto yard = yard_of({{"b", "1A"}}, 6);
    const auto [cost, trace] = evaluate_traced(plan, {{1}, yard}, TimingParams{});
    (void)cost;

    std::ostringstream out;
    write_trace_csv(out, trace);
    const std::string text = out.str();
    CHECK(text.find("kind,ship_stack,yard_stack,tag,timestamp_s") == 0);
    CHECK(text.find("single-unload,1,,,90") != std::string::npos);
    CHECK(text.find("single-load,1,1,1A,180") != std::string::npos);
}
