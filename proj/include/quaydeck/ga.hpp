#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quaydeck/model.hpp"
#include "quaydeck/rng.hpp"
#include "quaydeck/sim.hpp"

namespace quaydeck {

struct GAParams {
    int population_size = 200;
    double crossover_rate = 0.80;
    double mutation_rate = 0.30;
    double elite_fraction = 0.20;
    int max_generations = 2000;
    int stagnation_limit = 100;
    std::uint64_t seed = 0;
};

/// Reads key=value lines ('#' starts a comment). Unknown keys are errors.
GAParams load_ga_config(const std::string& path, GAParams base = {});

struct Individual {
    Chromosome chromosome;
    CostBreakdown cost;
    double objective = 0.0; // selection metric; +inf for infeasible members
};

/// Population sorted ascending by objective, with the cumulative
/// reciprocal-cost ladder used by roulette selection.
class RankedPopulation {
  public:
    explicit RankedPopulation(std::vector<Individual> members);

    const std::vector<Individual>& members() const { return members_; }
    const Individual& best() const { return members_.front(); }
    std::size_t size() const { return members_.size(); }
    double total_fitness() const { return ladder_.empty() ? 0.0 : ladder_.back(); }

    /// Fitness-proportionate draw (fitness = 1/objective). Throws
    /// std::runtime_error when every member is infeasible.
    const Individual& roulette_select(Rng& rng) const;

  private:
    std::vector<Individual> members_;
    std::vector<double> ladder_; // cumulative fitness, finite members only
};

// ---- genetic operators ------------------------------------------------

/// Two-point crossover: the segment [cut1, cut2) is exchanged, duplicates
/// inside the received segment are removed, and genes lost from the replaced
/// segment are appended at the back (in parent order).
std::pair<std::vector<int>, std::vector<int>>
crossover_1d_at(const std::vector<int>& parent_a, const std::vector<int>& parent_b,
                int cut1, int cut2);
std::pair<std::vector<int>, std::vector<int>>
crossover_1d(const std::vector<int>& parent_a, const std::vector<int>& parent_b, Rng& rng);

/// 2D substring crossover: yard stacks in [row1, row2] are exchanged whole,
/// the boundary rows additionally exchange the tag segment [col1, col2), and
/// the children are repaired (in-region duplicates removed, dropped tags
/// appended to the minimum-height stack with room, overflow shed the same
/// way). Foreign containers never change parent. Throws std::runtime_error
/// when an appended tag fits nowhere.
std::pair<YardState, YardState> crossover_2d_at(const YardState& parent_a,
                                                const YardState& parent_b, int row1, int row2,
                                                int col1, int col2);
std::pair<YardState, YardState> crossover_2d(const YardState& parent_a, const YardState& parent_b,
                                             Rng& rng);

/// Swap mutation on the permutation (pos1 == pos2 is a no-op).
std::vector<int> mutate_1d_at(std::vector<int> seq, int pos1, int pos2);
std::vector<int> mutate_1d(std::vector<int> seq, Rng& rng);

/// 2D two-point swapping mutation: the k-th ship-bound slot of one stack
/// trades tags with the k'-th of another. Positions count tag slots only,
/// bottom-up, 0-based. Heights are untouched.
YardState mutate_2d_at(YardState yard, int row1, int tag_slot1, int row2, int tag_slot2);
YardState mutate_2d(YardState yard, Rng& rng);

// ---- engine -----------------------------------------------------------

/// Strategy knobs shared with the baseline solvers. Defaults give the full
/// hybrid optimizer (both chromosome parts, full cost objective).
struct RunOptions {
    bool evolve_unload_seq = true;
    bool evolve_yard = true;
    /// Selection objective ignores rehandles (alpha*w_s + beta*w_d) when set;
    /// reported results are still full evaluations.
    bool rehandle_free_objective = false;
    /// Force the simulator into single-cycle mode, for both selection and
    /// the reported cost.
    bool single_cycle = false;
    /// First-improvement single-tag relocation applied to a few top members
    /// each generation.
    bool elite_local_search = false;
    /// Sequence used when evolve_unload_seq is false (default: ship order).
    std::optional<std::vector<int>> fixed_seq;
};

struct GenerationStats {
    int generation;
    double best_seconds;
    double mean_seconds;
};

struct GAResult {
    Chromosome best;
    CostBreakdown best_cost;     // full evaluation under the run's sim mode
    std::vector<GenerationStats> history;
    int generations_run = 0;
};

/// Random initial population: uniform random permutations plus random
/// redistributions of the template's ship-bound tags (foreign containers
/// stay in their stacks, compacted to the bottom). Every member is evaluated
/// and ranked. Throws when the tags cannot fit under the cap.
RankedPopulation init_population(const ShipRowPlan& plan, const YardState& yard_template,
                                 const GAParams& params, TimingParams timing, Rng& rng,
                                 const RunOptions& options = {});

/// One generation: elites copied unchanged, the rest bred by roulette
/// selection, crossover with probability crossover_rate, and mutation of
/// both parts under a single P_m draw per offspring.
RankedPopulation evolve_generation(const RankedPopulation& population, const ShipRowPlan& plan,
                                   const GAParams& params, TimingParams timing, Rng& rng,
                                   const RunOptions& options = {});

/// Full optimizer run: iterates until max_generations or until the best cost
/// has not improved for stagnation_limit consecutive generations.
GAResult run(const ShipRowPlan& plan, const YardState& yard_template, const GAParams& params,
             TimingParams timing, const RunOptions& options = {});

void write_history_csv(std::ostream& out, const std::vector<GenerationStats>& history);

} // namespace quaydeck
