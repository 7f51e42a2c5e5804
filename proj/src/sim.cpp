#include "quaydeck/sim.hpp"

#include <cmath>
#include <ostream>

namespace quaydeck {

int nearest_lowest_stack(const YardState& yard, int source) {
    int best = -1;
    int best_height = 0;
    int best_dist = 0;
    for (int i = 0; i < yard.num_stacks(); ++i) {
        if (i == source || yard.height(i) >= yard.cap)
            continue;
        const int h = yard.height(i);
        const int d = std::abs(i - source);
        if (best < 0 || h < best_height || (h == best_height && d < best_dist)) {
            best = i;
            best_height = h;
            best_dist = d;
        }
    }
    if (best < 0)
        throw SimError(SimErrorKind::NoCapacity,
                       "no yard stack can take a rehandled container");
    return best;
}

namespace {

/// Moves every slot above `pos` in stack `src` to its nearest-lowest
/// destination (one rehandle each), then removes the slot at `pos`.
template <typename OnMove>
int dig_out_blockers(YardState& yard, int src, std::size_t pos, OnMove&& on_move) {
    auto& source_stack = yard.stacks[static_cast<std::size_t>(src)];
    int rehandles = 0;
    while (source_stack.size() - 1 > pos) {
        YardSlot blocker = source_stack.back();
        source_stack.pop_back();
        const int dest = nearest_lowest_stack(yard, src);
        yard.stacks[static_cast<std::size_t>(dest)].push_back(blocker);
        ++rehandles;
        on_move(yard.stacks[static_cast<std::size_t>(dest)].back(), dest);
    }
    source_stack.pop_back();
    return rehandles;
}

} // namespace

RetrievalResult calculate_rehandles(YardState& yard, const ContainerTag& target, SimTrace* trace,
                                    double* clock, double gamma) {
    int src = -1;
    std::size_t pos = 0;
    for (int i = 0; i < yard.num_stacks() && src < 0; ++i) {
        const auto& stack = yard.stacks[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < stack.size(); ++j) {
            if (stack[j] && *stack[j] == target) {
                src = i;
                pos = j;
                break;
            }
        }
    }
    if (src < 0)
        throw SimError(SimErrorKind::NotFound, "container " + to_string(target) +
                                                   " not found in the yard");

    const int rehandles =
        dig_out_blockers(yard, src, pos, [&](const YardSlot& blocker, int dest) {
            if (clock)
                *clock += gamma;
            if (trace)
                trace->events.push_back(
                    {EventKind::Rehandle, 0, dest + 1, blocker, clock ? *clock : 0.0});
        });
    return {rehandles, src};
}

SimState::SimState(const ShipRowPlan& plan, const Chromosome& chromosome, TimingParams timing,
                   EvalOptions options, bool record_trace)
    : plan_(plan), seq_(chromosome.unload_seq), yard_(chromosome.yard), timing_(timing),
      options_(options), record_trace_(record_trace) {
    const auto n = plan.stacks.size();
    remaining_unloads_.resize(n);
    next_load_.assign(n, 0);
    tu_.assign(n, 0.0);
    tl_.assign(n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        remaining_unloads_[c] = plan.stacks[c].unload;
    for (int i = 0; i < yard_.num_stacks(); ++i)
        for (const auto& slot : yard_.stacks[static_cast<std::size_t>(i)])
            if (slot)
                tag_stack_.emplace(tag_key(*slot), i);
}

bool SimState::loads_remain() const {
    for (std::size_t c = 0; c < plan_.stacks.size(); ++c)
        if (next_load_[c] < static_cast<int>(plan_.stacks[c].load.size()))
            return true;
    return false;
}

int SimState::eligible_loading_stack() {
    const int n = plan_.num_stacks();
    while (load_ptr_ < n) {
        const int stack = seq_[static_cast<std::size_t>(load_ptr_)] - 1;
        if (next_load_[static_cast<std::size_t>(stack)] <
            static_cast<int>(plan_.stacks[static_cast<std::size_t>(stack)].load.size()))
            break;
        ++load_ptr_; // fully loaded (or nothing to load): move the pointer on
    }
    if (load_ptr_ >= n)
        return -1;
    const int stack = seq_[static_cast<std::size_t>(load_ptr_)] - 1;
    // Loading may only start once the stack's own unloading is complete.
    return remaining_unloads_[static_cast<std::size_t>(stack)] == 0 ? stack : -1;
}

std::optional<SimState::LoadOutcome> SimState::try_load() {
    const int stack = eligible_loading_stack();
    if (stack < 0)
        return std::nullopt;
    const ContainerTag tag =
        plan_.stacks[static_cast<std::size_t>(stack)].load[static_cast<std::size_t>(
            next_load_[static_cast<std::size_t>(stack)])];

    const auto found = tag_stack_.find(tag_key(tag));
    if (found == tag_stack_.end())
        throw SimError(SimErrorKind::NotFound,
                       "container " + to_string(tag) + " not found in the yard");
    const int src = found->second;
    const auto& source_stack = yard_.stacks[static_cast<std::size_t>(src)];
    std::size_t pos = source_stack.size();
    for (std::size_t j = 0; j < source_stack.size(); ++j) {
        if (source_stack[j] && *source_stack[j] == tag) {
            pos = j;
            break;
        }
    }
    const int rehandles =
        dig_out_blockers(yard_, src, pos, [this](const YardSlot& blocker, int dest) {
            clock_ += timing_.gamma;
            if (blocker)
                tag_stack_[tag_key(*blocker)] = dest;
            if (record_trace_)
                trace_.events.push_back({EventKind::Rehandle, 0, dest + 1, blocker, clock_});
        });
    tag_stack_.erase(tag_key(tag)); // by key: the blocker updates may have rehashed
    rehandles_ += rehandles;
    ++next_load_[static_cast<std::size_t>(stack)];
    return LoadOutcome{stack, tag, src, rehandles};
}

void SimState::unload_first_stack() {
    const int first = seq_.front() - 1;
    while (remaining_unloads_[static_cast<std::size_t>(first)] > 0) {
        --remaining_unloads_[static_cast<std::size_t>(first)];
        clock_ += timing_.alpha;
        ++singles_;
        tu_[static_cast<std::size_t>(first)] = clock_;
        if (record_trace_)
            trace_.events.push_back(
                {EventKind::SingleUnload, first + 1, 0, std::nullopt, clock_});
    }
}

SimState::LoadStep SimState::loading_operation() {
    const auto outcome = try_load();
    if (!outcome)
        return {false, 0};
    return {true, outcome->rehandles};
}

void SimState::run_to_completion() {
    unload_first_stack();

    // Remaining stacks: each unload pairs with a load when the rolling
    // loading stack is ready, a dual cycle; otherwise it stays a single.
    for (std::size_t i = 1; i < seq_.size(); ++i) {
        const int c = seq_[i] - 1;
        while (remaining_unloads_[static_cast<std::size_t>(c)] > 0) {
            --remaining_unloads_[static_cast<std::size_t>(c)];
            std::optional<LoadOutcome> load;
            if (options_.dual_cycling && loads_remain())
                load = try_load();
            if (load) {
                clock_ += timing_.beta;
                ++duals_;
                tu_[static_cast<std::size_t>(c)] = clock_;
                tl_[static_cast<std::size_t>(load->ship_stack)] = clock_;
                if (record_trace_)
                    trace_.events.push_back(
                        {EventKind::Dual, c + 1, load->yard_source + 1, load->tag, clock_});
            } else {
                clock_ += timing_.alpha;
                ++singles_;
                tu_[static_cast<std::size_t>(c)] = clock_;
                if (record_trace_)
                    trace_.events.push_back(
                        {EventKind::SingleUnload, c + 1, 0, std::nullopt, clock_});
            }
        }
    }

    // Whatever is still ashore goes aboard as single cycles.
    while (loads_remain()) {
        const auto load = try_load();
        if (!load)
            throw SimError(SimErrorKind::NotFound, "loads remain but no stack is eligible");
        clock_ += timing_.alpha;
        ++singles_;
        tl_[static_cast<std::size_t>(load->ship_stack)] = clock_;
        if (record_trace_)
            trace_.events.push_back({EventKind::SingleLoad, load->ship_stack + 1,
                                     load->yard_source + 1, load->tag, clock_});
    }
}

CostBreakdown SimState::finish() {
    CostBreakdown cost;
    cost.singles = singles_;
    cost.duals = duals_;
    cost.rehandles = rehandles_;
    cost.total_seconds = timing_.alpha * static_cast<double>(singles_) +
                         timing_.beta * static_cast<double>(duals_) +
                         timing_.gamma * static_cast<double>(rehandles_);
    cost.tu = tu_;
    cost.tl = tl_;
    return cost;
}

CostBreakdown evaluate(const ShipRowPlan& plan, const Chromosome& chromosome, TimingParams timing,
                       EvalOptions options) {
    SimState state(plan, chromosome, timing, options, /*record_trace=*/false);
    state.run_to_completion();
    return state.finish();
}

std::pair<CostBreakdown, SimTrace> evaluate_traced(const ShipRowPlan& plan,
                                                   const Chromosome& chromosome,
                                                   TimingParams timing, EvalOptions options) {
    SimState state(plan, chromosome, timing, options, /*record_trace=*/true);
    state.run_to_completion();
    return {state.finish(), state.trace()};
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << "kind,ship_stack,yard_stack,tag,timestamp_s\n";
    for (const auto& e : trace.events) {
        switch (e.kind) {
        case EventKind::SingleUnload: out << "single-unload"; break;
        case EventKind::SingleLoad: out << "single-load"; break;
        case EventKind::Dual: out << "dual"; break;
        case EventKind::Rehandle: out << "rehandle"; break;
        }
        out << ',';
        if (e.ship_stack > 0)
            out << e.ship_stack;
        out << ',';
        if (e.yard_stack > 0)
            out << e.yard_stack;
        out << ',';
        if (e.tag)
            out << to_string(*e.tag);
        out << ',' << e.timestamp_s << '\n';
    }
}

} // namespace quaydeck
