#include "quaydeck/model.hpp"

#include <algorithm>
#include <map>

namespace quaydeck {

int ShipRowPlan::total_unloads() const {
    int sum = 0;
    for (const auto& s : stacks)
        sum += s.unload;
    return sum;
}

int ShipRowPlan::total_loads() const {
    int sum = 0;
    for (const auto& s : stacks)
        sum += static_cast<int>(s.load.size());
    return sum;
}

std::vector<ContainerTag> ShipRowPlan::load_tags() const {
    std::vector<ContainerTag> tags;
    for (const auto& s : stacks)
        tags.insert(tags.end(), s.load.begin(), s.load.end());
    return tags;
}

std::vector<ContainerTag> YardState::tags_sorted() const {
    std::vector<ContainerTag> tags;
    for (const auto& stack : stacks)
        for (const auto& slot : stack)
            if (slot)
                tags.push_back(*slot);
    std::sort(tags.begin(), tags.end());
    return tags;
}

bool is_permutation_of_stacks(const std::vector<int>& seq, int num_stacks) {
    if (static_cast<int>(seq.size()) != num_stacks)
        return false;
    std::vector<bool> seen(static_cast<std::size_t>(num_stacks), false);
    for (int v : seq) {
        if (v < 1 || v > num_stacks || seen[static_cast<std::size_t>(v - 1)])
            return false;
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    return true;
}

std::vector<Violation> validate_instance(const ShipRowPlan& plan, const YardState& yard) {
    std::vector<Violation> out;
    const auto add = [&out](ViolationKind kind, std::string msg) {
        out.push_back({kind, std::move(msg)});
    };

    std::map<ContainerTag, int> plan_tags;
    for (std::size_t c = 0; c < plan.stacks.size(); ++c) {
        const auto& s = plan.stacks[c];
        const int stack_no = static_cast<int>(c) + 1;
        if (s.stay < 0 || s.unload < 0)
            add(ViolationKind::BadStackPlan,
                "ship stack " + std::to_string(stack_no) + ": negative stay/unload count");
        if (s.stay + s.unload > plan.max_height)
            add(ViolationKind::BadStackPlan,
                "ship stack " + std::to_string(stack_no) + ": stay + unload exceeds max height " +
                    std::to_string(plan.max_height));
        if (s.stay + static_cast<int>(s.load.size()) > plan.max_height)
            add(ViolationKind::BadStackPlan,
                "ship stack " + std::to_string(stack_no) + ": stay + loads exceeds max height " +
                    std::to_string(plan.max_height));
        for (const auto& tag : s.load) {
            if (tag.ship_stack != stack_no)
                add(ViolationKind::BadStackPlan, "ship stack " + std::to_string(stack_no) +
                                                     ": load tag " + to_string(tag) +
                                                     " references another stack");
            if (tag.tier_label < 1)
                add(ViolationKind::BadStackPlan, "load tag " + to_string(tag) + ": bad tier label");
            if (++plan_tags[tag] == 2)
                add(ViolationKind::DuplicateTag, "tag " + to_string(tag) + " duplicated in plan");
        }
    }

    std::map<ContainerTag, int> yard_tags;
    for (std::size_t i = 0; i < yard.stacks.size(); ++i) {
        const auto& stack = yard.stacks[i];
        if (static_cast<int>(stack.size()) > yard.cap)
            add(ViolationKind::HeightCap, "yard stack " + std::to_string(i + 1) + ": height " +
                                              std::to_string(stack.size()) + " exceeds cap " +
                                              std::to_string(yard.cap));
        for (const auto& slot : stack) {
            if (!slot)
                continue;
            if (++yard_tags[*slot] == 2)
                add(ViolationKind::DuplicateTag,
                    "tag " + to_string(*slot) + " duplicated in yard");
            if (!plan_tags.count(*slot))
                add(ViolationKind::UnknownTag, "yard stack " + std::to_string(i + 1) +
                                                   ": unknown tag " + to_string(*slot));
        }
    }
    for (const auto& [tag, n] : plan_tags)
        if (!yard_tags.count(tag))
            add(ViolationKind::MissingTag, "load tag " + to_string(tag) + " absent from the yard");

    return out;
}

std::vector<Violation> validate_chromosome(const ShipRowPlan& plan, const Chromosome& chromosome) {
    auto out = validate_instance(plan, chromosome.yard);
    if (!is_permutation_of_stacks(chromosome.unload_seq, plan.num_stacks()))
        out.push_back({ViolationKind::BadPermutation,
                       "unload_seq is not a permutation of 1.." +
                           std::to_string(plan.num_stacks())});
    return out;
}

} // namespace quaydeck
