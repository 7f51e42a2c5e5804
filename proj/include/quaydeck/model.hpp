#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quaydeck/tag.hpp"

namespace quaydeck {

/// One ship stack of the row: how many containers leave, how many stay
/// aboard (always at the bottom, never touched), and which containers are
/// loaded back in, bottom-up.
struct StackPlan {
    int stay = 0;
    int unload = 0;
    std::vector<ContainerTag> load;
};

/// Unloading/loading requirements of one ship row.
struct ShipRowPlan {
    std::vector<StackPlan> stacks;
    int max_height = 0;

    int num_stacks() const { return static_cast<int>(stacks.size()); }
    int total_unloads() const;
    int total_loads() const;
    /// All load tags of the row, in (stack, tier) order.
    std::vector<ContainerTag> load_tags() const;
};

/// A yard slot either holds a container bound for this ship (a tag) or a
/// foreign container that merely occupies space ("b" in the JSON schema).
using YardSlot = std::optional<ContainerTag>;

/// Linear bay of yard stacks; adjacent indices are physically adjacent.
/// Slots are listed bottom-up.
struct YardState {
    std::vector<std::vector<YardSlot>> stacks;
    int cap = 0;

    int num_stacks() const { return static_cast<int>(stacks.size()); }
    int height(int i) const { return static_cast<int>(stacks[static_cast<std::size_t>(i)].size()); }
    /// Ship-bound tags present anywhere in the yard, sorted.
    std::vector<ContainerTag> tags_sorted() const;
};

/// Composite GA solution: the 1D unloading permutation (1-based ship stack
/// indices) plus the 2D dockyard arrangement.
struct Chromosome {
    std::vector<int> unload_seq;
    YardState yard;
};

/// Cycle and rehandle service times, in seconds.
struct TimingParams {
    double alpha = 90.0; // single cycle
    double beta = 170.0; // dual cycle
    double gamma = 60.0; // yard rehandle
};

/// Cost decomposition of one simulated schedule.
/// total_seconds == alpha*singles + beta*duals + gamma*rehandles, exactly.
struct CostBreakdown {
    long singles = 0;
    long duals = 0;
    long rehandles = 0;
    double total_seconds = 0.0;
    std::vector<double> tu; // per-stack unload completion time
    std::vector<double> tl; // per-stack load completion time
};

enum class ViolationKind {
    BadStackPlan,     // negative counts, over ship height, foreign-stack tag
    DuplicateTag,     // same tag twice in plan or yard
    UnknownTag,       // yard tag absent from every load list
    MissingTag,       // load tag absent from the yard
    HeightCap,        // yard stack taller than cap
    BadPermutation,   // unload_seq not a permutation of 1..N
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Checks every structural invariant of (plan, yard). Violations are data,
/// not failures: an empty result means the instance is well formed.
std::vector<Violation> validate_instance(const ShipRowPlan& plan, const YardState& yard);

/// validate_instance plus the unload_seq permutation check.
std::vector<Violation> validate_chromosome(const ShipRowPlan& plan, const Chromosome& chromosome);

bool is_permutation_of_stacks(const std::vector<int>& seq, int num_stacks);

} // namespace quaydeck
