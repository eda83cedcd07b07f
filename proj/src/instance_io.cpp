#include "sndrr/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sndrr {

using ordered_json = nlohmann::ordered_json;

std::string format_decimal(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

double parse_decimal(const ordered_json& j, const char* field) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw std::runtime_error(std::string("field ") + field + " must be a decimal string");
    const std::string text = j.get<std::string>();
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        throw std::runtime_error(std::string("field ") + field + " is not a valid decimal: " + text);
    }
    return value;
}

}  // namespace

Instance read_instance(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("instance parse error: ") + e.what());
    }

    Instance instance;
    const int num_nodes = doc.at("nodes").get<int>();
    std::vector<Arc> arcs;
    for (const auto& ja : doc.at("arcs")) {
        Arc arc;
        arc.tail = ja.at("tail").get<int>();
        arc.head = ja.at("head").get<int>();
        arc.transit = ja.at("transit").get<int>();
        arc.fixed_cost = parse_decimal(ja.at("fixed_cost"), "fixed_cost");
        arc.capacity = ja.at("capacity").get<int>();
        arc.var_cost = parse_decimal(ja.at("var_cost"), "var_cost");
        arcs.push_back(arc);
    }
    instance.network = FlatNetwork(num_nodes, std::move(arcs));

    for (const auto& jk : doc.at("commodities")) {
        Commodity k;
        k.id = jk.at("id").get<int>();
        k.origin = jk.at("origin").get<int>();
        k.dest = jk.at("dest").get<int>();
        k.demand = parse_decimal(jk.at("demand"), "demand");
        k.release = jk.at("release").get<int>();
        k.deadline = jk.at("deadline").get<int>();
        if (jk.contains("subgraph_arcs")) {
            k.subgraph = jk.at("subgraph_arcs").get<std::vector<ArcId>>();
            std::sort(k.subgraph.begin(), k.subgraph.end());
        } else {
            k.subgraph = full_arc_set(instance.network);
        }
        instance.commodities.push_back(std::move(k));
    }
    instance.horizon = doc.at("horizon").get<int>();

    if (doc.contains("hubs")) {
        HubLayout layout;
        layout.hubs = doc.at("hubs").at("hub_nodes").get<std::vector<NodeId>>();
        layout.region = doc.at("hubs").at("region_of").get<std::vector<int>>();
        instance.hub_layout = std::move(layout);
    }
    return instance;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return read_instance(in);
}

void write_instance(const Instance& instance, std::ostream& out) {
    ordered_json doc;
    doc["nodes"] = instance.network.num_nodes();
    doc["arcs"] = ordered_json::array();
    for (const Arc& arc : instance.network.arcs()) {
        ordered_json ja;
        ja["tail"] = arc.tail;
        ja["head"] = arc.head;
        ja["transit"] = arc.transit;
        ja["fixed_cost"] = format_decimal(arc.fixed_cost);
        ja["capacity"] = arc.capacity;
        ja["var_cost"] = format_decimal(arc.var_cost);
        doc["arcs"].push_back(std::move(ja));
    }
    const std::vector<ArcId> all_arcs = full_arc_set(instance.network);
    doc["commodities"] = ordered_json::array();
    for (const Commodity& k : instance.commodities) {
        ordered_json jk;
        jk["id"] = k.id;
        jk["origin"] = k.origin;
        jk["dest"] = k.dest;
        jk["demand"] = format_decimal(k.demand);
        jk["release"] = k.release;
        jk["deadline"] = k.deadline;
        if (k.subgraph != all_arcs) jk["subgraph_arcs"] = k.subgraph;
        doc["commodities"].push_back(std::move(jk));
    }
    doc["horizon"] = instance.horizon;
    if (instance.hub_layout) {
        doc["hubs"]["hub_nodes"] = instance.hub_layout->hubs;
        doc["hubs"]["region_of"] = instance.hub_layout->region;
    }
    out << doc.dump(2) << "\n";
}

void write_instance_file(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    write_instance(instance, out);
}

std::string instance_to_string(const Instance& instance) {
    std::ostringstream out;
    write_instance(instance, out);
    return out.str();
}

}  // namespace sndrr
