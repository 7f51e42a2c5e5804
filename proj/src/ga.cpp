#include "quaydeck/ga.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace quaydeck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// (foreign base count, tags bottom-up) view of one yard stack, used by the
/// operators. Foreign containers keep their stack but compact to the bottom.
struct StackView {
    int foreign = 0;
    std::vector<ContainerTag> tags;
};

std::vector<StackView> to_views(const YardState& yard) {
    std::vector<StackView> views(yard.stacks.size());
    for (std::size_t i = 0; i < yard.stacks.size(); ++i) {
        for (const auto& slot : yard.stacks[i]) {
            if (slot)
                views[i].tags.push_back(*slot);
            else
                ++views[i].foreign;
        }
    }
    return views;
}

YardState from_views(const std::vector<StackView>& views, int cap) {
    YardState yard;
    yard.cap = cap;
    yard.stacks.resize(views.size());
    for (std::size_t i = 0; i < views.size(); ++i) {
        auto& stack = yard.stacks[i];
        stack.assign(static_cast<std::size_t>(views[i].foreign), std::nullopt);
        for (const auto& tag : views[i].tags)
            stack.push_back(tag);
    }
    return yard;
}

int view_height(const StackView& v) { return v.foreign + static_cast<int>(v.tags.size()); }

/// Minimum-height stack with spare capacity (ties to the lowest index).
int min_height_stack_with_room(const std::vector<StackView>& views, int cap) {
    int best = -1;
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (view_height(views[i]) >= cap)
            continue;
        if (best < 0 || view_height(views[i]) < view_height(views[static_cast<std::size_t>(best)]))
            best = static_cast<int>(i);
    }
    return best;
}

double objective_of(const CostBreakdown& cost, TimingParams timing, const RunOptions& options) {
    if (options.rehandle_free_objective)
        return timing.alpha * static_cast<double>(cost.singles) +
               timing.beta * static_cast<double>(cost.duals);
    return cost.total_seconds;
}

Individual evaluate_member(Chromosome chromosome, const ShipRowPlan& plan, TimingParams timing,
                           const RunOptions& options) {
    Individual member;
    member.chromosome = std::move(chromosome);
    try {
        member.cost = evaluate(plan, member.chromosome, timing,
                               EvalOptions{!options.single_cycle});
        member.objective = objective_of(member.cost, timing, options);
    } catch (const SimError&) {
        member.cost = {};
        member.objective = kInf; // infeasible offspring stay in the pool but never win
    }
    return member;
}

} // namespace

GAParams load_ga_config(const std::string& path, GAParams base) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open GA config: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "population_size")
                base.population_size = std::stoi(value);
            else if (key == "crossover_rate")
                base.crossover_rate = std::stod(value);
            else if (key == "mutation_rate")
                base.mutation_rate = std::stod(value);
            else if (key == "elite_fraction")
                base.elite_fraction = std::stod(value);
            else if (key == "max_generations")
                base.max_generations = std::stoi(value);
            else if (key == "stagnation_limit")
                base.stagnation_limit = std::stoi(value);
            else if (key == "seed")
                base.seed = std::stoull(value);
            else
                throw std::runtime_error("unknown key");
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad entry '" + key +
                                     "'");
        }
    }
    if (base.population_size < 1 || base.crossover_rate < 0.0 || base.crossover_rate > 1.0 ||
        base.mutation_rate < 0.0 || base.mutation_rate > 1.0 || base.elite_fraction <= 0.0 ||
        base.elite_fraction >= 1.0 || base.max_generations < 0 || base.stagnation_limit < 1)
        throw std::runtime_error(path + ": GA parameters out of range");
    return base;
}

RankedPopulation::RankedPopulation(std::vector<Individual> members)
    : members_(std::move(members)) {
    std::stable_sort(members_.begin(), members_.end(),
                     [](const Individual& a, const Individual& b) {
                         return a.objective < b.objective;
                     });
    ladder_.reserve(members_.size());
    double sum = 0.0;
    for (const auto& m : members_) {
        if (std::isfinite(m.objective) && m.objective > 0.0)
            sum += 1.0 / m.objective;
        ladder_.push_back(sum);
    }
}

const Individual& RankedPopulation::roulette_select(Rng& rng) const {
    const double total = total_fitness();
    if (!(total > 0.0)) {
        // Zero-cost members carry no roulette weight; fall back to a uniform
        // draw over the feasible ones rather than failing.
        std::size_t finite = 0;
        for (const auto& m : members_)
            if (std::isfinite(m.objective))
                ++finite;
        if (finite == 0)
            throw std::runtime_error("roulette selection: every member is infeasible");
        return members_[rng.index(finite)];
    }
    const double r = rng.real(total);
    const auto it = std::lower_bound(ladder_.begin(), ladder_.end(), r);
    const auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        std::distance(ladder_.begin(), it), static_cast<std::ptrdiff_t>(members_.size()) - 1));
    return members_[idx];
}

// ---- 1D operators -------------------------------------------------------

std::pair<std::vector<int>, std::vector<int>>
crossover_1d_at(const std::vector<int>& parent_a, const std::vector<int>& parent_b, int cut1,
                int cut2) {
    const auto c1 = static_cast<std::size_t>(cut1);
    const auto c2 = static_cast<std::size_t>(cut2);
    auto child = [c1, c2](const std::vector<int>& base, const std::vector<int>& other) {
        std::set<int> outside;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (i < c1 || i >= c2)
                outside.insert(base[i]);
        std::vector<int> result(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(c1));
        for (std::size_t i = c1; i < c2; ++i)
            if (!outside.count(other[i]))
                result.push_back(other[i]); // duplicates inside the received segment drop out
        result.insert(result.end(), base.begin() + static_cast<std::ptrdiff_t>(c2), base.end());
        std::set<int> present(result.begin(), result.end());
        for (int gene : base)
            if (!present.count(gene))
                result.push_back(gene); // dropped genes go to the back
        return result;
    };
    return {child(parent_a, parent_b), child(parent_b, parent_a)};
}

std::pair<std::vector<int>, std::vector<int>>
crossover_1d(const std::vector<int>& parent_a, const std::vector<int>& parent_b, Rng& rng) {
    const int n = static_cast<int>(parent_a.size());
    int cut1 = rng.index_int(n + 1);
    int cut2 = rng.index_int(n + 1);
    if (cut1 > cut2)
        std::swap(cut1, cut2);
    return crossover_1d_at(parent_a, parent_b, cut1, cut2);
}

std::vector<int> mutate_1d_at(std::vector<int> seq, int pos1, int pos2) {
    std::swap(seq[static_cast<std::size_t>(pos1)], seq[static_cast<std::size_t>(pos2)]);
    return seq;
}

std::vector<int> mutate_1d(std::vector<int> seq, Rng& rng) {
    const int n = static_cast<int>(seq.size());
    const int p1 = rng.index_int(n);
    const int p2 = rng.index_int(n);
    return mutate_1d_at(std::move(seq), p1, p2);
}

// ---- 2D operators -------------------------------------------------------

namespace {

/// Shared repair: drop in-region duplicates (the copy outside [row1,row2]
/// wins), append tags that vanished entirely to the lowest stack with room,
/// then shed any over-cap stack the same way.
void repair_yard(std::vector<StackView>& views, const std::vector<ContainerTag>& full_set, int cap,
                 int row1, int row2) {
    std::set<ContainerTag> outside;
    for (std::size_t i = 0; i < views.size(); ++i)
        if (static_cast<int>(i) < row1 || static_cast<int>(i) > row2)
            outside.insert(views[i].tags.begin(), views[i].tags.end());

    std::set<ContainerTag> seen;
    for (int i = row1; i <= row2; ++i) {
        auto& tags = views[static_cast<std::size_t>(i)].tags;
        std::erase_if(tags, [&](const ContainerTag& tag) {
            if (outside.count(tag) || seen.count(tag))
                return true;
            seen.insert(tag);
            return false;
        });
    }

    std::set<ContainerTag> present = outside;
    present.insert(seen.begin(), seen.end());
    std::vector<ContainerTag> missing;
    for (const auto& tag : full_set)
        if (!present.count(tag))
            missing.push_back(tag);
    std::sort(missing.begin(), missing.end());
    for (const auto& tag : missing) {
        const int dest = min_height_stack_with_room(views, cap);
        if (dest < 0)
            throw std::runtime_error("crossover repair: no stack can take " + to_string(tag));
        views[static_cast<std::size_t>(dest)].tags.push_back(tag);
    }

    for (auto& view : views) {
        while (view_height(view) > cap) {
            if (view.tags.empty())
                throw std::runtime_error("crossover repair: foreign containers exceed the cap");
            const ContainerTag tag = view.tags.back();
            view.tags.pop_back();
            const int dest = min_height_stack_with_room(views, cap);
            if (dest < 0)
                throw std::runtime_error("crossover repair: no stack can take " + to_string(tag));
            views[static_cast<std::size_t>(dest)].tags.push_back(tag);
        }
    }
}

} // namespace

std::pair<YardState, YardState> crossover_2d_at(const YardState& parent_a,
                                                const YardState& parent_b, int row1, int row2,
                                                int col1, int col2) {
    auto views_a = to_views(parent_a);
    auto views_b = to_views(parent_b);
    const auto full_set = parent_a.tags_sorted();

    // Row phase: the tag content of whole stacks trades places; each child
    // keeps its own foreign base.
    for (int r = row1; r <= row2; ++r)
        std::swap(views_a[static_cast<std::size_t>(r)].tags,
                  views_b[static_cast<std::size_t>(r)].tags);

    // Column phase: two-point segment swap on the boundary rows.
    for (int r : {row1, row2}) {
        auto& ta = views_a[static_cast<std::size_t>(r)].tags;
        auto& tb = views_b[static_cast<std::size_t>(r)].tags;
        const int len = static_cast<int>(std::min(ta.size(), tb.size()));
        const int lo = std::min(col1, len);
        const int hi = std::min(col2, len);
        for (int k = lo; k < hi; ++k)
            std::swap(ta[static_cast<std::size_t>(k)], tb[static_cast<std::size_t>(k)]);
        if (row1 == row2)
            break;
    }

    repair_yard(views_a, full_set, parent_a.cap, row1, row2);
    repair_yard(views_b, full_set, parent_b.cap, row1, row2);
    return {from_views(views_a, parent_a.cap), from_views(views_b, parent_b.cap)};
}

std::pair<YardState, YardState> crossover_2d(const YardState& parent_a, const YardState& parent_b,
                                             Rng& rng) {
    const int rows = parent_a.num_stacks();
    int r1 = rng.index_int(rows);
    int r2 = rng.index_int(rows);
    if (r1 > r2)
        std::swap(r1, r2);
    auto tag_count = [](const YardState& yard, int row) {
        std::size_t n = 0;
        for (const auto& slot : yard.stacks[static_cast<std::size_t>(row)])
            if (slot)
                ++n;
        return n;
    };
    const std::size_t min_len =
        std::min({tag_count(parent_a, r1), tag_count(parent_b, r1), tag_count(parent_a, r2),
                  tag_count(parent_b, r2)});
    int c1 = rng.index_int(static_cast<int>(min_len) + 1);
    int c2 = rng.index_int(static_cast<int>(min_len) + 1);
    if (c1 > c2)
        std::swap(c1, c2);
    return crossover_2d_at(parent_a, parent_b, r1, r2, c1, c2);
}

YardState mutate_2d_at(YardState yard, int row1, int tag_slot1, int row2, int tag_slot2) {
    auto tag_position = [&yard](int row, int slot) -> YardSlot& {
        auto& stack = yard.stacks[static_cast<std::size_t>(row)];
        int seen = 0;
        for (auto& s : stack) {
            if (s && seen++ == slot)
                return s;
        }
        throw std::out_of_range("mutate_2d_at: tag slot out of range");
    };
    auto& a = tag_position(row1, tag_slot1);
    auto& b = tag_position(row2, tag_slot2);
    std::swap(a, b);
    return yard;
}

YardState mutate_2d(YardState yard, Rng& rng) {
    std::vector<int> nonempty;
    std::vector<int> tag_counts(yard.stacks.size(), 0);
    for (std::size_t i = 0; i < yard.stacks.size(); ++i) {
        for (const auto& slot : yard.stacks[i])
            if (slot)
                ++tag_counts[i];
        if (tag_counts[i] > 0)
            nonempty.push_back(static_cast<int>(i));
    }
    if (nonempty.empty())
        return yard;
    const int r1 = nonempty[static_cast<std::size_t>(rng.index_int(static_cast<int>(nonempty.size())))];
    const int r2 = nonempty[static_cast<std::size_t>(rng.index_int(static_cast<int>(nonempty.size())))];
    const int c1 = rng.index_int(tag_counts[static_cast<std::size_t>(r1)]);
    const int c2 = rng.index_int(tag_counts[static_cast<std::size_t>(r2)]);
    return mutate_2d_at(std::move(yard), r1, c1, r2, c2);
}

// ---- engine -------------------------------------------------------------

namespace {

std::vector<int> make_sequence(const ShipRowPlan& plan, const RunOptions& options, Rng& rng) {
    std::vector<int> seq(static_cast<std::size_t>(plan.num_stacks()));
    std::iota(seq.begin(), seq.end(), 1);
    if (options.evolve_unload_seq) {
        rng.shuffle(seq);
    } else if (options.fixed_seq) {
        seq = *options.fixed_seq;
    }
    return seq;
}

YardState random_redistribution(const ShipRowPlan& plan, const YardState& yard_template,
                                Rng& rng) {
    auto views = to_views(yard_template);
    int capacity = 0;
    for (auto& view : views) {
        view.tags.clear();
        capacity += yard_template.cap - view.foreign;
    }
    auto tags = plan.load_tags();
    if (static_cast<int>(tags.size()) > capacity)
        throw std::runtime_error("yard template cannot hold the load tags under its cap");
    rng.shuffle(tags);
    for (const auto& tag : tags) {
        // Uniform choice among stacks that still have room.
        int room = 0;
        for (const auto& view : views)
            if (view_height(view) < yard_template.cap)
                ++room;
        int pick = rng.index_int(room);
        for (std::size_t i = 0; i < views.size(); ++i) {
            if (view_height(views[i]) >= yard_template.cap)
                continue;
            if (pick-- == 0) {
                views[i].tags.push_back(tag);
                break;
            }
        }
    }
    return from_views(views, yard_template.cap);
}

/// First-improvement single-tag relocation pass used by the local-search
/// baseline. Returns true when a move was applied.
bool local_search_step(Individual& member, const ShipRowPlan& plan, TimingParams timing,
                       const RunOptions& options) {
    auto views = to_views(member.chromosome.yard);
    const int cap = member.chromosome.yard.cap;
    for (std::size_t from = 0; from < views.size(); ++from) {
        for (std::size_t k = 0; k < views[from].tags.size(); ++k) {
            for (std::size_t to = 0; to < views.size(); ++to) {
                if (to == from || view_height(views[to]) >= cap)
                    continue;
                auto candidate = views;
                const ContainerTag tag = candidate[from].tags[k];
                candidate[from].tags.erase(candidate[from].tags.begin() +
                                           static_cast<std::ptrdiff_t>(k));
                candidate[to].tags.push_back(tag);
                Chromosome trial{member.chromosome.unload_seq, from_views(candidate, cap)};
                Individual moved = evaluate_member(std::move(trial), plan, timing, options);
                if (moved.objective < member.objective) {
                    member = std::move(moved);
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace

RankedPopulation init_population(const ShipRowPlan& plan, const YardState& yard_template,
                                 const GAParams& params, TimingParams timing, Rng& rng,
                                 const RunOptions& options) {
    std::vector<Individual> members;
    members.reserve(static_cast<std::size_t>(params.population_size));
    for (int i = 0; i < params.population_size; ++i) {
        Chromosome chromosome;
        chromosome.unload_seq = make_sequence(plan, options, rng);
        chromosome.yard = options.evolve_yard ? random_redistribution(plan, yard_template, rng)
                                              : yard_template;
        members.push_back(evaluate_member(std::move(chromosome), plan, timing, options));
    }
    return RankedPopulation(std::move(members));
}

RankedPopulation evolve_generation(const RankedPopulation& population, const ShipRowPlan& plan,
                                   const GAParams& params, TimingParams timing, Rng& rng,
                                   const RunOptions& options) {
    const int n = static_cast<int>(population.size());
    const int elite_count =
        std::min(n, static_cast<int>(std::ceil(params.elite_fraction * n)));

    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < elite_count; ++i)
        next.push_back(population.members()[static_cast<std::size_t>(i)]);

    while (static_cast<int>(next.size()) < n) {
        const Individual& parent_a = population.roulette_select(rng);
        const Individual& parent_b = population.roulette_select(rng);

        Chromosome child_a = parent_a.chromosome;
        Chromosome child_b = parent_b.chromosome;
        if (rng.real01() < params.crossover_rate) {
            if (options.evolve_unload_seq)
                std::tie(child_a.unload_seq, child_b.unload_seq) =
                    crossover_1d(parent_a.chromosome.unload_seq, parent_b.chromosome.unload_seq,
                                 rng);
            if (options.evolve_yard)
                std::tie(child_a.yard, child_b.yard) =
                    crossover_2d(parent_a.chromosome.yard, parent_b.chromosome.yard, rng);
        }
        for (Chromosome* child : {&child_a, &child_b}) {
            if (static_cast<int>(next.size()) >= n)
                break;
            // One P_m draw gates the mutation of both chromosome parts.
            if (rng.real01() < params.mutation_rate) {
                if (options.evolve_unload_seq)
                    child->unload_seq = mutate_1d(std::move(child->unload_seq), rng);
                if (options.evolve_yard)
                    child->yard = mutate_2d(std::move(child->yard), rng);
            }
            next.push_back(evaluate_member(std::move(*child), plan, timing, options));
        }
    }

    if (options.elite_local_search) {
        const int searched = std::min(elite_count, 5);
        for (int i = 0; i < searched; ++i)
            local_search_step(next[static_cast<std::size_t>(i)], plan, timing, options);
    }

    return RankedPopulation(std::move(next));
}

GAResult run(const ShipRowPlan& plan, const YardState& yard_template, const GAParams& params,
             TimingParams timing, const RunOptions& options) {
    Rng rng(params.seed);
    RankedPopulation population = init_population(plan, yard_template, params, timing, rng, options);

    GAResult result;
    Individual best = population.best();
    auto record = [&result, &population](int generation) {
        double sum = 0.0;
        int finite = 0;
        for (const auto& m : population.members()) {
            if (std::isfinite(m.objective)) {
                sum += m.cost.total_seconds;
                ++finite;
            }
        }
        result.history.push_back({generation, population.best().cost.total_seconds,
                                  finite > 0 ? sum / finite : kInf});
    };
    record(0);

    int stagnant = 0;
    for (int g = 1; g <= params.max_generations; ++g) {
        population = evolve_generation(population, plan, params, timing, rng, options);
        result.generations_run = g;
        record(g);
        if (population.best().objective < best.objective) {
            best = population.best();
            stagnant = 0;
        } else {
            ++stagnant;
        }
        if (stagnant >= params.stagnation_limit)
            break;
    }

    result.best = best.chromosome;
    result.best_cost = best.cost;
    return result;
}

void write_history_csv(std::ostream& out, const std::vector<GenerationStats>& history) {
    out << "generation,best_cost_s,mean_cost_s\n";
    for (const auto& h : history)
        out << h.generation << ',' << h.best_seconds << ',' << h.mean_seconds << '\n';
}

} // namespace quaydeck
