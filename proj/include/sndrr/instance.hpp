#ifndef SNDRR_INSTANCE_HPP
#define SNDRR_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

namespace sndrr {

using NodeId = int;
using ArcId = int;

// One transportation leg of the flat (physical) network.
struct Arc {
    NodeId tail = 0;
    NodeId head = 0;
    int transit = 1;          // integral time units, >= 1
    double fixed_cost = 1.0;  // per truck dispatched on a timed copy
    int capacity = 1;         // units per truck
    double var_cost = 0.0;    // per unit of flow
};

// Flat directed network. Arcs are identified by their index; adjacency is
// materialized once at construction.
class FlatNetwork {
public:
    FlatNetwork() = default;
    FlatNetwork(int num_nodes, std::vector<Arc> arcs);

    int num_nodes() const { return num_nodes_; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(ArcId a) const { return arcs_[static_cast<std::size_t>(a)]; }
    const std::vector<ArcId>& out_arcs(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<ArcId>& in_arcs(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }
    std::optional<ArcId> find_arc(NodeId tail, NodeId head) const;

private:
    int num_nodes_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<ArcId>> out_;
    std::vector<std::vector<ArcId>> in_;
};

// A shipment: demand q must travel o -> d within [release, deadline] on a
// single trajectory whose flat path stays inside `subgraph`.
struct Commodity {
    int id = 0;
    NodeId origin = 0;
    NodeId dest = 0;
    double demand = 1.0;
    int release = 0;
    int deadline = 1;
    std::vector<ArcId> subgraph;  // sorted arc ids of the designated network
};

// Optional hub-and-spoke structure attached to generated instances.
struct HubLayout {
    std::vector<NodeId> hubs;  // sorted node ids
    std::vector<int> region;   // per node: index into `hubs`
};

struct Instance {
    FlatNetwork network;
    std::vector<Commodity> commodities;
    int horizon = 0;  // T = max deadline
    std::optional<HubLayout> hub_layout;
};

// Full invariant check; returns one human-readable violation per defect
// (empty means the instance is well-formed and every commodity is feasible).
std::vector<std::string> validate(const Instance& instance);

// Designated-subgraph reduction for one commodity: drops arcs leaving the
// destination and arcs that cannot lie on any origin->destination walk.
// Throws std::runtime_error if the reduction leaves no feasible path.
std::vector<ArcId> preprocess_subgraph(const Instance& instance, int k);

// preprocess_subgraph applied to every commodity.
Instance preprocess(Instance instance);

// Shortest o->d transit inside the given arc set; -1 when unreachable.
int shortest_transit(const FlatNetwork& network, const std::vector<ArcId>& subgraph,
                     NodeId from, NodeId to);

// Node sequence of the shortest o->d dipath by transit time; among ties the
// lexicographically smallest node sequence. Empty when unreachable.
std::vector<NodeId> lex_shortest_path(const FlatNetwork& network, const std::vector<ArcId>& subgraph,
                                      NodeId from, NodeId to);

// All arc ids of the network, sorted; the "subgraph absent" default.
std::vector<ArcId> full_arc_set(const FlatNetwork& network);

}  // namespace sndrr

#endif  // SNDRR_INSTANCE_HPP
