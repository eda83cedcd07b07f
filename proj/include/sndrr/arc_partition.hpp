#ifndef SNDRR_ARC_PARTITION_HPP
#define SNDRR_ARC_PARTITION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sndrr/instance.hpp"
#include "sndrr/time_expansion.hpp"

namespace sndrr {

// Per-node partition of the outgoing arcs. Parts are sorted internally and
// ordered by their smallest arc id, so part indices are stable across runs.
class ArcPartition {
public:
    ArcPartition() = default;
    ArcPartition(const FlatNetwork& network, std::vector<std::vector<std::vector<ArcId>>> parts);

    int num_parts(NodeId v) const { return static_cast<int>(parts_[static_cast<std::size_t>(v)].size()); }
    const std::vector<std::vector<ArcId>>& parts(NodeId v) const {
        return parts_[static_cast<std::size_t>(v)];
    }
    // Index of the part containing arc a within parts(tail(a)).
    int part_of(ArcId a) const { return part_of_arc_[static_cast<std::size_t>(a)]; }

    // A partition is valid when every commodity's usable outgoing arcs at any
    // node lie inside a single part.
    bool valid_for(const Instance& instance) const;
    // One line per flat node listing its parts as arc-id sets.
    void dump(std::ostream& out) const;

private:
    std::vector<std::vector<std::vector<ArcId>>> parts_;
    std::vector<int> part_of_arc_;
};

// Start from singletons and merge, per commodity and node, every part that
// meets the commodity's usable outgoing arcs. With `exempt_source_nodes` set,
// nodes without incoming arcs skip merges forced by commodities that do not
// originate there (such commodities cannot reach the node anyway).
ArcPartition finest_valid_partition(const Instance& instance, bool exempt_source_nodes = false);

// Hubs get two parts (regional and national outgoing arcs); all other nodes
// get the trivial part. Requires hub/region labels on the instance.
ArcPartition hub_spoke_partition(const Instance& instance);

// Every outgoing arc its own part (valid only when designated networks are
// arc-disjoint per node, e.g. single paths).
ArcPartition singleton_partition(const FlatNetwork& network);

// One part per node covering all outgoing arcs; always valid.
ArcPartition trivial_partition(const FlatNetwork& network);

// Designated subgraphs for hub-and-spoke instances: regional arcs of the
// origin and destination regions plus national arcs, minus national arcs
// leaving the destination hub or entering the origin hub, minus regional
// arcs leaving the origin hub.
std::vector<ArcId> hub_spoke_arcs(const FlatNetwork& network, const HubLayout& layout,
                                  NodeId origin, NodeId dest);
std::vector<ArcId> hub_spoke_subgraph(const Instance& instance, int k);
Instance apply_hub_spoke_subgraphs(Instance instance);

// Auxiliary flat network G(D, partition): one node copy per part plus a
// terminal copy per flat node; one arc copy of vw out of the part copy
// housing vw, toward every copy of w. Arc attributes equal the flat arc's.
class AuxGraph {
public:
    AuxGraph() = default;
    AuxGraph(const FlatNetwork& flat, ArcPartition partition);

    const FlatNetwork& flat() const { return *flat_; }
    const ArcPartition& partition() const { return partition_; }
    // The auxiliary network materialized as a flat network of its own.
    const FlatNetwork& graph() const { return graph_; }

    int num_aux_nodes() const { return graph_.num_nodes(); }
    int num_aux_arcs() const { return graph_.num_arcs(); }

    NodeId flat_node(NodeId aux_node) const { return node_flat_[static_cast<std::size_t>(aux_node)]; }
    // Copy index at the flat node; 0 is the terminal copy.
    int copy_index(NodeId aux_node) const { return node_copy_[static_cast<std::size_t>(aux_node)]; }
    NodeId aux_node(NodeId flat_node, int copy) const {
        return node_offset_[static_cast<std::size_t>(flat_node)] + copy;
    }
    NodeId terminal_copy(NodeId flat_node) const { return aux_node(flat_node, 0); }
    int num_copies(NodeId flat_node) const { return partition_.num_parts(flat_node) + 1; }
    // The copy of tail(a) whose departures serve arc a.
    NodeId departure_copy(ArcId flat_arc) const;

    ArcId flat_arc(ArcId aux_arc) const { return arc_flat_[static_cast<std::size_t>(aux_arc)]; }
    // Aux copy of `flat_arc` whose head is the given copy of head(flat_arc).
    ArcId aux_arc(ArcId flat_arc, int head_copy) const {
        return arc_base_[static_cast<std::size_t>(flat_arc)] + head_copy;
    }

    std::string aux_node_name(NodeId aux_node) const;

private:
    const FlatNetwork* flat_ = nullptr;
    ArcPartition partition_;
    FlatNetwork graph_;
    std::vector<NodeId> node_flat_;
    std::vector<int> node_copy_;
    std::vector<NodeId> node_offset_;
    std::vector<ArcId> arc_flat_;
    std::vector<ArcId> arc_base_;
};

// Commodity k's designated network inside G: exactly one copy of every node
// and arc of the reduced designated network D^k.
struct AuxCommodity {
    NodeId origin = -1;               // o'_k
    NodeId dest = -1;                 // terminal copy of d_k
    std::vector<NodeId> nodes;        // sorted aux node ids
    std::vector<ArcId> arcs;          // sorted aux arc ids
};

// Requires D^k reduced: no arcs out of the destination, every other node of
// the subgraph with an outgoing arc. Throws otherwise.
AuxCommodity map_commodity_subgraph(const AuxGraph& aux, const Instance& instance, int k);

// Path bijection between dipaths of D and dipaths of G ending at a terminal
// copy. Both directions validate their input and throw on non-dipaths.
std::vector<NodeId> phi(const AuxGraph& aux, const std::vector<NodeId>& flat_path);
std::vector<NodeId> phi_inverse(const AuxGraph& aux, const std::vector<NodeId>& aux_path);

// Trajectory bijection: phi on the flat path with verbatim departure times.
Trajectory phi_trajectory(const AuxGraph& aux, const Trajectory& flat_trajectory);
Trajectory phi_trajectory_inverse(const AuxGraph& aux, const Trajectory& aux_trajectory);

// Consolidation classes of an aux partial network: all aux movement arcs
// grouped by (underlying flat arc, departure time). Each class corresponds
// to one movement arc of the projected flat partial network.
struct ConsolidationClass {
    ArcId flat_arc = -1;
    int depart = 0;
    // Members as (aux arc id, tail time, head time).
    std::vector<std::tuple<ArcId, int, int>> members;
};

struct ConsolidationClasses {
    std::vector<ConsolidationClass> entries;  // sorted by (flat_arc, depart)
    const ConsolidationClass* find(ArcId flat_arc, int depart) const;
};

ConsolidationClasses compute_consolidation_classes(const AuxGraph& aux,
                                                   const PartialNetwork& aux_partial);

// D_S(G_S): merge the time sets of all copies of each flat node and rebuild
// arcs by the arc-copy rule.
PartialNetwork project_to_flat(const AuxGraph& aux, const PartialNetwork& aux_partial);

// Minimal aux time sets: time 0 on every copy, T on terminal copies, r_k at
// o'_k and l_k at the destination terminal copy.
std::vector<std::vector<int>> initial_aux_timed_nodes(const AuxGraph& aux, const Instance& instance,
                                                      const std::vector<AuxCommodity>& mapped);

}  // namespace sndrr

#endif  // SNDRR_ARC_PARTITION_HPP
