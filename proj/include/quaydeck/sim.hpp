#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "quaydeck/model.hpp"

namespace quaydeck {

enum class SimErrorKind { NotFound, NoCapacity };

/// Raised when a chromosome cannot be executed against its instance
/// (tag missing from the yard, or no stack left to take a rehandled
/// container). The GA maps this to infinite cost instead of aborting.
class SimError : public std::runtime_error {
  public:
    SimError(SimErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    SimErrorKind kind() const { return kind_; }

  private:
    SimErrorKind kind_;
};

enum class EventKind { SingleUnload, SingleLoad, Dual, Rehandle };

/// Audit trail of one simulation. Event counts reconcile exactly with the
/// returned CostBreakdown; timestamps are nondecreasing. Dual events carry
/// the unloaded ship stack plus the loaded tag and its source yard stack;
/// rehandle events carry the moved slot (tag empty for foreign containers)
/// and its destination.
struct SimTrace {
    struct Event {
        EventKind kind;
        int ship_stack;              // 1-based; 0 when not applicable
        int yard_stack;              // 1-based; 0 when not applicable
        std::optional<ContainerTag> tag;
        double timestamp_s;
    };
    std::vector<Event> events;
};

struct EvalOptions {
    bool dual_cycling = true; // false forces every move to a single cycle
};

/// Destination of a rehandled container: among stacks != source with spare
/// capacity, minimal height wins; ties go to the nearest index, then to the
/// lower index. Throws SimError{NoCapacity} when every other stack is full.
int nearest_lowest_stack(const YardState& yard, int source);

/// Digs `target` out of the yard: blockers above it move one by one
/// (top first) to nearest_lowest_stack of the source, each counting one
/// rehandle; the target itself is then removed. Returns the rehandle count
/// and the stack the target was retrieved from.
struct RetrievalResult {
    int rehandles;
    int source_stack;
};
RetrievalResult calculate_rehandles(YardState& yard, const ContainerTag& target,
                                    SimTrace* trace = nullptr, double* clock = nullptr,
                                    double gamma = 0.0);

/// Stepwise simulation state. evaluate() drives it; tests can too.
class SimState {
  public:
    SimState(const ShipRowPlan& plan, const Chromosome& chromosome, TimingParams timing,
             EvalOptions options = {}, bool record_trace = false);

    /// Removes every non-staying container of the first stack in the
    /// sequence, one single cycle each.
    void unload_first_stack();

    /// Attempts one load on the current loading stack (advancing past fully
    /// loaded stacks). Returns {false, 0} when the pointer's stack has not
    /// finished unloading or nothing is left to load.
    struct LoadStep {
        bool loaded;
        int rehandles;
    };
    LoadStep loading_operation();

    /// Runs the remaining schedule to completion.
    void run_to_completion();

    bool loads_remain() const;
    CostBreakdown finish();
    const SimTrace& trace() const { return trace_; }

  private:
    struct LoadOutcome {
        int ship_stack;  // 0-based
        ContainerTag tag;
        int yard_source; // 0-based
        int rehandles;
    };
    int eligible_loading_stack(); // -1 when none; advances the pointer
    std::optional<LoadOutcome> try_load();

    // tag -> current yard stack, kept in step with rehandle moves
    std::unordered_map<std::uint64_t, int> tag_stack_;

    const ShipRowPlan& plan_;
    std::vector<int> seq_;
    YardState yard_;
    TimingParams timing_;
    EvalOptions options_;
    bool record_trace_;

    std::vector<int> remaining_unloads_;
    std::vector<int> next_load_;
    int load_ptr_ = 0;
    double clock_ = 0.0;
    long singles_ = 0;
    long duals_ = 0;
    long rehandles_ = 0;
    std::vector<double> tu_;
    std::vector<double> tl_;
    SimTrace trace_;
};

/// Deterministic cost of executing `chromosome` against `plan`:
/// unload the first stack as singles, then pair every further unload with a
/// load into the rolling loading stack when that stack is ready (dual cycle),
/// finish leftover loads as singles. T = alpha*w_s + beta*w_d + gamma*R.
CostBreakdown evaluate(const ShipRowPlan& plan, const Chromosome& chromosome,
                       TimingParams timing, EvalOptions options = {});

/// Same, but also returns the event trace.
std::pair<CostBreakdown, SimTrace> evaluate_traced(const ShipRowPlan& plan,
                                                   const Chromosome& chromosome,
                                                   TimingParams timing, EvalOptions options = {});

/// CSV export: kind,ship_stack,yard_stack,tag,timestamp_s
void write_trace_csv(std::ostream& out, const SimTrace& trace);

} // namespace quaydeck
