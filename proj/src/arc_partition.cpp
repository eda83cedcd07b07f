#include "sndrr/arc_partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sndrr {

namespace {

// Union-find over arc ids, scoped to one node's outgoing arcs.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

ArcPartition::ArcPartition(const FlatNetwork& network,
                           std::vector<std::vector<std::vector<ArcId>>> parts)
    : parts_(std::move(parts)) {
    if (static_cast<int>(parts_.size()) != network.num_nodes()) {
        throw std::invalid_argument("partition needs one entry per node");
    }
    part_of_arc_.assign(static_cast<std::size_t>(network.num_arcs()), -1);
    for (NodeId v = 0; v < network.num_nodes(); ++v) {
        auto& node_parts = parts_[static_cast<std::size_t>(v)];
        for (auto& part : node_parts) std::sort(part.begin(), part.end());
        std::sort(node_parts.begin(), node_parts.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::vector<ArcId> covered;
        for (std::size_t i = 0; i < node_parts.size(); ++i) {
            for (ArcId a : node_parts[i]) {
                if (a < 0 || a >= network.num_arcs() || network.arc(a).tail != v) {
                    throw std::invalid_argument("part contains an arc not leaving its node");
                }
                if (part_of_arc_[static_cast<std::size_t>(a)] != -1) {
                    throw std::invalid_argument("arc appears in two parts");
                }
                part_of_arc_[static_cast<std::size_t>(a)] = static_cast<int>(i);
                covered.push_back(a);
            }
        }
        if (covered.size() != network.out_arcs(v).size()) {
            throw std::invalid_argument("parts do not cover all outgoing arcs");
        }
    }
}

bool ArcPartition::valid_for(const Instance& instance) const {
    for (const Commodity& k : instance.commodities) {
        // Usable outgoing arcs per node must stay in one part.
        std::map<NodeId, int> part_at_node;
        for (ArcId a : k.subgraph) {
            const NodeId v = instance.network.arc(a).tail;
            const int part = part_of(a);
            auto [it, inserted] = part_at_node.emplace(v, part);
            if (!inserted && it->second != part) return false;
        }
    }
    return true;
}

void ArcPartition::dump(std::ostream& out) const {
    for (std::size_t v = 0; v < parts_.size(); ++v) {
        out << "node " << v << ":";
        for (const auto& part : parts_[v]) {
            out << " {";
            for (std::size_t i = 0; i < part.size(); ++i) out << (i ? "," : "") << part[i];
            out << "}";
        }
        out << "\n";
    }
}

ArcPartition singleton_partition(const FlatNetwork& network) {
    std::vector<std::vector<std::vector<ArcId>>> parts(
        static_cast<std::size_t>(network.num_nodes()));
    for (NodeId v = 0; v < network.num_nodes(); ++v) {
        for (ArcId a : network.out_arcs(v)) parts[static_cast<std::size_t>(v)].push_back({a});
    }
    return ArcPartition(network, std::move(parts));
}

ArcPartition trivial_partition(const FlatNetwork& network) {
    std::vector<std::vector<std::vector<ArcId>>> parts(
        static_cast<std::size_t>(network.num_nodes()));
    for (NodeId v = 0; v < network.num_nodes(); ++v) {
        if (!network.out_arcs(v).empty()) {
            parts[static_cast<std::size_t>(v)].push_back(network.out_arcs(v));
        }
    }
    return ArcPartition(network, std::move(parts));
}

ArcPartition finest_valid_partition(const Instance& instance, bool exempt_source_nodes) {
    const FlatNetwork& net = instance.network;
    std::vector<std::vector<std::vector<ArcId>>> parts(static_cast<std::size_t>(net.num_nodes()));
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
        const auto& out = net.out_arcs(v);
        if (out.empty()) continue;
        // Local union-find over positions in `out`.
        UnionFind uf(static_cast<int>(out.size()));
        std::map<ArcId, int> position;
        for (std::size_t i = 0; i < out.size(); ++i) position[out[i]] = static_cast<int>(i);
        const bool source_node = net.in_arcs(v).empty();
        for (const Commodity& k : instance.commodities) {
            if (exempt_source_nodes && source_node && k.origin != v) continue;
            int first = -1;
            for (ArcId a : k.subgraph) {
                if (net.arc(a).tail != v) continue;
                const int pos = position.at(a);
                if (first < 0) {
                    first = pos;
                } else {
                    uf.unite(first, pos);
                }
            }
        }
        std::map<int, std::vector<ArcId>> groups;
        for (std::size_t i = 0; i < out.size(); ++i) {
            groups[uf.find(static_cast<int>(i))].push_back(out[i]);
        }
        for (auto& [root, arcs] : groups) parts[static_cast<std::size_t>(v)].push_back(std::move(arcs));
    }
    return ArcPartition(net, std::move(parts));
}

std::vector<ArcId> hub_spoke_arcs(const FlatNetwork& net, const HubLayout& layout,
                                  NodeId origin, NodeId dest) {
    const int origin_region = layout.region[static_cast<std::size_t>(origin)];
    const int dest_region = layout.region[static_cast<std::size_t>(dest)];
    const NodeId origin_hub = layout.hubs[static_cast<std::size_t>(origin_region)];
    const NodeId dest_hub = layout.hubs[static_cast<std::size_t>(dest_region)];

    std::vector<ArcId> kept;
    for (ArcId a = 0; a < net.num_arcs(); ++a) {
        const Arc& arc = net.arc(a);
        const int tail_region = layout.region[static_cast<std::size_t>(arc.tail)];
        const int head_region = layout.region[static_cast<std::size_t>(arc.head)];
        if (tail_region == head_region) {
            // Regional arc: usable only inside the origin or destination region,
            // and never leaving the origin hub.
            if (tail_region != origin_region && tail_region != dest_region) continue;
            if (arc.tail == origin_hub) continue;
            kept.push_back(a);
        } else {
            // National (hub-to-hub) arc.
            if (arc.tail == dest_hub) continue;
            if (arc.head == origin_hub) continue;
            kept.push_back(a);
        }
    }
    return kept;
}

std::vector<ArcId> hub_spoke_subgraph(const Instance& instance, int k) {
    if (!instance.hub_layout) throw std::invalid_argument("instance has no hub/region labels");
    const Commodity& com = instance.commodities[static_cast<std::size_t>(k)];
    return hub_spoke_arcs(instance.network, *instance.hub_layout, com.origin, com.dest);
}

Instance apply_hub_spoke_subgraphs(Instance instance) {
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        instance.commodities[i].subgraph = hub_spoke_subgraph(instance, static_cast<int>(i));
    }
    return preprocess(std::move(instance));
}

ArcPartition hub_spoke_partition(const Instance& instance) {
    if (!instance.hub_layout) throw std::invalid_argument("instance has no hub/region labels");
    const HubLayout& layout = *instance.hub_layout;
    const FlatNetwork& net = instance.network;
    std::vector<char> is_hub(static_cast<std::size_t>(net.num_nodes()), 0);
    for (NodeId h : layout.hubs) is_hub[static_cast<std::size_t>(h)] = 1;

    std::vector<std::vector<std::vector<ArcId>>> parts(static_cast<std::size_t>(net.num_nodes()));
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
        const auto& out = net.out_arcs(v);
        if (out.empty()) continue;
        if (!is_hub[static_cast<std::size_t>(v)]) {
            parts[static_cast<std::size_t>(v)].push_back(out);
            continue;
        }
        std::vector<ArcId> regional;
        std::vector<ArcId> national;
        for (ArcId a : out) {
            const Arc& arc = net.arc(a);
            const bool same_region = layout.region[static_cast<std::size_t>(arc.tail)] ==
                                     layout.region[static_cast<std::size_t>(arc.head)];
            (same_region ? regional : national).push_back(a);
        }
        if (!regional.empty()) parts[static_cast<std::size_t>(v)].push_back(std::move(regional));
        if (!national.empty()) parts[static_cast<std::size_t>(v)].push_back(std::move(national));
    }
    return ArcPartition(net, std::move(parts));
}

AuxGraph::AuxGraph(const FlatNetwork& flat, ArcPartition partition)
    : flat_(&flat), partition_(std::move(partition)) {
    node_offset_.assign(static_cast<std::size_t>(flat.num_nodes()), 0);
    int next = 0;
    for (NodeId v = 0; v < flat.num_nodes(); ++v) {
        node_offset_[static_cast<std::size_t>(v)] = next;
        const int copies = partition_.num_parts(v) + 1;
        for (int c = 0; c < copies; ++c) {
            node_flat_.push_back(v);
            node_copy_.push_back(c);
        }
        next += copies;
    }

    std::vector<Arc> aux_arcs;
    arc_base_.assign(static_cast<std::size_t>(flat.num_arcs()), -1);
    for (ArcId a = 0; a < flat.num_arcs(); ++a) {
        const Arc& arc = flat.arc(a);
        const NodeId tail_copy = aux_node(arc.tail, partition_.part_of(a) + 1);
        arc_base_[static_cast<std::size_t>(a)] = static_cast<int>(aux_arcs.size());
        const int head_copies = partition_.num_parts(arc.head) + 1;
        for (int j = 0; j < head_copies; ++j) {
            Arc copy = arc;
            copy.tail = tail_copy;
            copy.head = aux_node(arc.head, j);
            aux_arcs.push_back(copy);
            arc_flat_.push_back(a);
        }
    }
    graph_ = FlatNetwork(next, std::move(aux_arcs));
}

NodeId AuxGraph::departure_copy(ArcId flat_arc) const {
    return aux_node(flat_->arc(flat_arc).tail, partition_.part_of(flat_arc) + 1);
}

std::string AuxGraph::aux_node_name(NodeId aux_node) const {
    std::ostringstream name;
    name << "v" << flat_node(aux_node) << "c" << copy_index(aux_node);
    return name.str();
}

AuxCommodity map_commodity_subgraph(const AuxGraph& aux, const Instance& instance, int k) {
    const FlatNetwork& net = aux.flat();
    const Commodity& com = instance.commodities[static_cast<std::size_t>(k)];

    // k's copy at each flat node of the reduced designated network.
    std::map<NodeId, NodeId> copy_at;
    std::map<NodeId, bool> has_out;
    for (ArcId a : com.subgraph) {
        const Arc& arc = net.arc(a);
        has_out[arc.tail] = true;
        if (!has_out.count(arc.head)) has_out.emplace(arc.head, false);
        const NodeId copy = aux.departure_copy(a);
        auto [it, inserted] = copy_at.emplace(arc.tail, copy);
        if (!inserted && it->second != copy) {
            throw std::invalid_argument("partition not valid for commodity subgraph");
        }
    }
    for (const auto& [v, out] : has_out) {
        if (v == com.dest) {
            if (out) throw std::invalid_argument("designated network not reduced: arcs leave the destination");
        } else if (!out) {
            throw std::invalid_argument("designated network not reduced: dead-end node present");
        }
    }
    copy_at[com.dest] = aux.terminal_copy(com.dest);

    AuxCommodity mapped;
    mapped.origin = copy_at.at(com.origin);
    mapped.dest = copy_at.at(com.dest);
    for (const auto& [v, u] : copy_at) mapped.nodes.push_back(u);
    std::sort(mapped.nodes.begin(), mapped.nodes.end());
    for (ArcId a : com.subgraph) {
        const Arc& arc = net.arc(a);
        mapped.arcs.push_back(aux.aux_arc(a, aux.copy_index(copy_at.at(arc.head))));
    }
    std::sort(mapped.arcs.begin(), mapped.arcs.end());
    return mapped;
}

std::vector<NodeId> phi(const AuxGraph& aux, const std::vector<NodeId>& flat_path) {
    if (flat_path.empty()) throw std::invalid_argument("phi: empty path");
    std::vector<NodeId> result;
    for (std::size_t i = 0; i + 1 < flat_path.size(); ++i) {
        const auto arc = aux.flat().find_arc(flat_path[i], flat_path[i + 1]);
        if (!arc) throw std::invalid_argument("phi: node sequence is not a dipath");
        result.push_back(aux.departure_copy(*arc));
    }
    result.push_back(aux.terminal_copy(flat_path.back()));
    return result;
}

std::vector<NodeId> phi_inverse(const AuxGraph& aux, const std::vector<NodeId>& aux_path) {
    if (aux_path.empty()) throw std::invalid_argument("phi_inverse: empty path");
    if (aux.copy_index(aux_path.back()) != 0) {
        throw std::invalid_argument("phi_inverse: path must end at a terminal copy");
    }
    for (std::size_t i = 0; i + 1 < aux_path.size(); ++i) {
        if (!aux.graph().find_arc(aux_path[i], aux_path[i + 1])) {
            throw std::invalid_argument("phi_inverse: node sequence is not a dipath in G");
        }
    }
    std::vector<NodeId> result;
    for (NodeId u : aux_path) result.push_back(aux.flat_node(u));
    return result;
}

namespace {

// Rebuild a trajectory from a node sequence and per-arc departure times,
// with exact transits and holdovers in between.
Trajectory assemble_trajectory(const FlatNetwork& net, int commodity,
                               const std::vector<NodeId>& nodes, const std::vector<int>& departures) {
    Trajectory result;
    result.commodity = commodity;
    TimedNode at{nodes.front(), departures.empty() ? 0 : departures.front()};
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const auto arc = net.find_arc(nodes[i], nodes[i + 1]);
        if (!arc) throw std::invalid_argument("trajectory path is not a dipath");
        const int depart = departures[i];
        if (depart > at.time) {
            result.arcs.push_back({at, {nodes[i], depart}, TimedArcKind::holdover, -1});
            at.time = depart;
        } else if (depart < at.time) {
            throw std::invalid_argument("departure precedes arrival");
        }
        const int arrive = depart + net.arc(*arc).transit;
        result.arcs.push_back({{nodes[i], depart}, {nodes[i + 1], arrive}, TimedArcKind::movement, *arc});
        at = {nodes[i + 1], arrive};
    }
    return result;
}

std::vector<int> movement_departures(const Trajectory& trajectory) {
    std::vector<int> departures;
    for (const TimedArc& arc : trajectory.movement_arcs()) departures.push_back(arc.tail.time);
    return departures;
}

}  // namespace

Trajectory phi_trajectory(const AuxGraph& aux, const Trajectory& flat_trajectory) {
    const std::vector<NodeId> path = flat_trajectory.flat_path();
    const std::vector<NodeId> aux_path = phi(aux, path);
    return assemble_trajectory(aux.graph(), flat_trajectory.commodity, aux_path,
                               movement_departures(flat_trajectory));
}

Trajectory phi_trajectory_inverse(const AuxGraph& aux, const Trajectory& aux_trajectory) {
    std::vector<NodeId> aux_path;
    for (const TimedArc& arc : aux_trajectory.movement_arcs()) {
        if (aux_path.empty()) aux_path.push_back(arc.tail.node);
        aux_path.push_back(arc.head.node);
    }
    const std::vector<NodeId> path = phi_inverse(aux, aux_path);
    return assemble_trajectory(aux.flat(), aux_trajectory.commodity, path,
                               movement_departures(aux_trajectory));
}

const ConsolidationClass* ConsolidationClasses::find(ArcId flat_arc, int depart) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(flat_arc, depart),
                               [](const ConsolidationClass& e, const std::pair<ArcId, int>& key) {
                                   return std::make_pair(e.flat_arc, e.depart) < key;
                               });
    if (it == entries.end() || it->flat_arc != flat_arc || it->depart != depart) return nullptr;
    return &*it;
}

ConsolidationClasses compute_consolidation_classes(const AuxGraph& aux,
                                                   const PartialNetwork& aux_partial) {
    std::map<std::pair<ArcId, int>, std::vector<std::tuple<ArcId, int, int>>> buckets;
    for (ArcId e = 0; e < aux.num_aux_arcs(); ++e) {
        const ArcId a = aux.flat_arc(e);
        for (const auto& [tail_time, head_time] : aux_partial.movements(e)) {
            buckets[{a, tail_time}].emplace_back(e, tail_time, head_time);
        }
    }
    ConsolidationClasses classes;
    for (auto& [key, members] : buckets) {
        classes.entries.push_back({key.first, key.second, std::move(members)});
    }
    return classes;
}

PartialNetwork project_to_flat(const AuxGraph& aux, const PartialNetwork& aux_partial) {
    std::vector<std::vector<int>> times(static_cast<std::size_t>(aux.flat().num_nodes()));
    for (NodeId u = 0; u < aux.num_aux_nodes(); ++u) {
        const NodeId v = aux.flat_node(u);
        for (int t : aux_partial.times(u)) times[static_cast<std::size_t>(v)].push_back(t);
    }
    return PartialNetwork::build(aux.flat(), aux_partial.horizon(), std::move(times));
}

std::vector<std::vector<int>> initial_aux_timed_nodes(const AuxGraph& aux, const Instance& instance,
                                                      const std::vector<AuxCommodity>& mapped) {
    std::vector<std::vector<int>> times(static_cast<std::size_t>(aux.num_aux_nodes()));
    for (NodeId u = 0; u < aux.num_aux_nodes(); ++u) {
        times[static_cast<std::size_t>(u)].push_back(0);
        if (aux.copy_index(u) == 0) times[static_cast<std::size_t>(u)].push_back(instance.horizon);
    }
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        const Commodity& k = instance.commodities[i];
        times[static_cast<std::size_t>(mapped[i].origin)].push_back(k.release);
        times[static_cast<std::size_t>(mapped[i].dest)].push_back(k.deadline);
    }
    for (auto& set : times) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return times;
}

}  // namespace sndrr
