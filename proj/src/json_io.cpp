#include "quaydeck/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quaydeck {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json yard_to_json(const YardState& yard) {
    ordered_json j;
    j["cap"] = yard.cap;
    auto& stacks = j["stacks"] = ordered_json::array();
    for (const auto& stack : yard.stacks) {
        ordered_json js = ordered_json::array();
        for (const auto& slot : stack)
            js.push_back(slot ? to_string(*slot) : "b");
        stacks.push_back(std::move(js));
    }
    return j;
}

YardState yard_from_json(const ordered_json& j) {
    YardState yard;
    yard.cap = j.at("cap").get<int>();
    for (const auto& js : j.at("stacks")) {
        std::vector<YardSlot> stack;
        for (const auto& cell : js) {
            const auto text = cell.get<std::string>();
            if (text == "b") {
                stack.push_back(std::nullopt);
            } else if (auto tag = parse_tag(text)) {
                stack.push_back(*tag);
            } else {
                throw std::runtime_error("bad yard cell '" + text + "'");
            }
        }
        yard.stacks.push_back(std::move(stack));
    }
    return yard;
}

} // namespace

std::string instance_to_json(const ShipRowPlan& plan, const YardState& yard) {
    ordered_json j;
    auto& jp = j["plan"];
    jp["max_height"] = plan.max_height;
    auto& stacks = jp["stacks"] = ordered_json::array();
    for (const auto& s : plan.stacks) {
        ordered_json js;
        js["stay"] = s.stay;
        js["unload"] = s.unload;
        auto& loads = js["load"] = ordered_json::array();
        for (const auto& tag : s.load)
            loads.push_back(to_string(tag));
        stacks.push_back(std::move(js));
    }
    j["yard"] = yard_to_json(yard);
    return j.dump(2) + "\n";
}

std::pair<ShipRowPlan, YardState> instance_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    ShipRowPlan plan;
    const auto& jp = j.at("plan");
    plan.max_height = jp.at("max_height").get<int>();
    for (const auto& js : jp.at("stacks")) {
        StackPlan s;
        s.stay = js.at("stay").get<int>();
        s.unload = js.at("unload").get<int>();
        for (const auto& cell : js.at("load")) {
            const auto tag = parse_tag(cell.get<std::string>());
            if (!tag)
                throw std::runtime_error("bad load tag '" + cell.get<std::string>() + "'");
            s.load.push_back(*tag);
        }
        plan.stacks.push_back(std::move(s));
    }
    return {std::move(plan), yard_from_json(j.at("yard"))};
}

void save_instance(const std::string& path, const ShipRowPlan& plan, const YardState& yard) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << instance_to_json(plan, yard);
}

std::pair<ShipRowPlan, YardState> load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

std::string chromosome_to_json(const Chromosome& chromosome) {
    ordered_json j;
    j["unload_seq"] = chromosome.unload_seq;
    j["yard"] = yard_to_json(chromosome.yard);
    return j.dump(2) + "\n";
}

Chromosome chromosome_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    Chromosome chromosome;
    chromosome.unload_seq = j.at("unload_seq").get<std::vector<int>>();
    chromosome.yard = yard_from_json(j.at("yard"));
    return chromosome;
}

std::string cost_to_json(const CostBreakdown& cost) {
    ordered_json j;
    j["singles"] = cost.singles;
    j["duals"] = cost.duals;
    j["rehandles"] = cost.rehandles;
    j["total_seconds"] = cost.total_seconds;
    j["tu"] = cost.tu;
    j["tl"] = cost.tl;
    return j.dump(2) + "\n";
}

CostBreakdown cost_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    CostBreakdown cost;
    cost.singles = j.at("singles").get<long>();
    cost.duals = j.at("duals").get<long>();
    cost.rehandles = j.at("rehandles").get<long>();
    cost.total_seconds = j.at("total_seconds").get<double>();
    cost.tu = j.at("tu").get<std::vector<double>>();
    cost.tl = j.at("tl").get<std::vector<double>>();
    return cost;
}

} // namespace quaydeck
