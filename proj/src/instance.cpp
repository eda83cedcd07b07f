#include "sndrr/instance.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sndrr {

FlatNetwork::FlatNetwork(int num_nodes, std::vector<Arc> arcs)
    : num_nodes_(num_nodes), arcs_(std::move(arcs)) {
    if (num_nodes_ < 0) throw std::invalid_argument("node count must be nonnegative");
    out_.assign(static_cast<std::size_t>(num_nodes_), {});
    in_.assign(static_cast<std::size_t>(num_nodes_), {});
    for (ArcId a = 0; a < num_arcs(); ++a) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.tail < 0 || arc.tail >= num_nodes_ || arc.head < 0 || arc.head >= num_nodes_) {
            throw std::invalid_argument("arc endpoint out of range");
        }
        out_[static_cast<std::size_t>(arc.tail)].push_back(a);
        in_[static_cast<std::size_t>(arc.head)].push_back(a);
    }
}

std::optional<ArcId> FlatNetwork::find_arc(NodeId tail, NodeId head) const {
    if (tail < 0 || tail >= num_nodes_) return std::nullopt;
    for (ArcId a : out_[static_cast<std::size_t>(tail)]) {
        if (arc(a).head == head) return a;
    }
    return std::nullopt;
}

std::vector<ArcId> full_arc_set(const FlatNetwork& network) {
    std::vector<ArcId> all(static_cast<std::size_t>(network.num_arcs()));
    for (ArcId a = 0; a < network.num_arcs(); ++a) all[static_cast<std::size_t>(a)] = a;
    return all;
}

namespace {

// Adjacency of a subgraph given as a sorted arc-id set.
struct SubAdjacency {
    std::vector<std::vector<ArcId>> out;
    std::vector<std::vector<ArcId>> in;

    SubAdjacency(const FlatNetwork& network, const std::vector<ArcId>& subgraph) {
        out.assign(static_cast<std::size_t>(network.num_nodes()), {});
        in.assign(static_cast<std::size_t>(network.num_nodes()), {});
        for (ArcId a : subgraph) {
            const Arc& arc = network.arc(a);
            out[static_cast<std::size_t>(arc.tail)].push_back(a);
            in[static_cast<std::size_t>(arc.head)].push_back(a);
        }
    }
};

std::vector<char> reachable_from(const FlatNetwork& network, const SubAdjacency& adj, NodeId src) {
    std::vector<char> seen(static_cast<std::size_t>(network.num_nodes()), 0);
    std::deque<NodeId> queue{src};
    seen[static_cast<std::size_t>(src)] = 1;
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (ArcId a : adj.out[static_cast<std::size_t>(v)]) {
            const NodeId w = network.arc(a).head;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

std::vector<char> reaches_to(const FlatNetwork& network, const SubAdjacency& adj, NodeId dst) {
    std::vector<char> seen(static_cast<std::size_t>(network.num_nodes()), 0);
    std::deque<NodeId> queue{dst};
    seen[static_cast<std::size_t>(dst)] = 1;
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (ArcId a : adj.in[static_cast<std::size_t>(v)]) {
            const NodeId u = network.arc(a).tail;
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                queue.push_back(u);
            }
        }
    }
    return seen;
}

std::vector<long long> dijkstra(const FlatNetwork& network, const SubAdjacency& adj, NodeId src,
                                bool reverse) {
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> dist(static_cast<std::size_t>(network.num_nodes()), kInf);
    dist[static_cast<std::size_t>(src)] = 0;
    // (dist, node) ordered set; networks here are small, no need for a heap.
    std::vector<char> done(static_cast<std::size_t>(network.num_nodes()), 0);
    for (;;) {
        NodeId best = -1;
        long long best_dist = kInf;
        for (NodeId v = 0; v < network.num_nodes(); ++v) {
            if (!done[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] < best_dist) {
                best = v;
                best_dist = dist[static_cast<std::size_t>(v)];
            }
        }
        if (best < 0) break;
        done[static_cast<std::size_t>(best)] = 1;
        const auto& arcs = reverse ? adj.in[static_cast<std::size_t>(best)]
                                   : adj.out[static_cast<std::size_t>(best)];
        for (ArcId a : arcs) {
            const Arc& arc = network.arc(a);
            const NodeId next = reverse ? arc.tail : arc.head;
            const long long cand = best_dist + arc.transit;
            if (cand < dist[static_cast<std::size_t>(next)]) dist[static_cast<std::size_t>(next)] = cand;
        }
    }
    return dist;
}

}  // namespace

int shortest_transit(const FlatNetwork& network, const std::vector<ArcId>& subgraph,
                     NodeId from, NodeId to) {
    const SubAdjacency adj(network, subgraph);
    const auto dist = dijkstra(network, adj, from, /*reverse=*/false);
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    return dist[static_cast<std::size_t>(to)] >= kInf
               ? -1
               : static_cast<int>(dist[static_cast<std::size_t>(to)]);
}

std::vector<NodeId> lex_shortest_path(const FlatNetwork& network, const std::vector<ArcId>& subgraph,
                                      NodeId from, NodeId to) {
    const SubAdjacency adj(network, subgraph);
    const auto rdist = dijkstra(network, adj, to, /*reverse=*/true);
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    if (rdist[static_cast<std::size_t>(from)] >= kInf) return {};
    // Walk greedily: at v pick the smallest-id successor w that still lies on
    // a shortest v->to path. This yields the lexicographically smallest node
    // sequence among all shortest paths.
    std::vector<NodeId> path{from};
    NodeId v = from;
    while (v != to) {
        const long long remaining = rdist[static_cast<std::size_t>(v)];
        NodeId next = -1;
        for (ArcId a : adj.out[static_cast<std::size_t>(v)]) {
            const Arc& arc = network.arc(a);
            if (rdist[static_cast<std::size_t>(arc.head)] >= kInf) continue;
            if (arc.transit + rdist[static_cast<std::size_t>(arc.head)] == remaining) {
                if (next < 0 || arc.head < next) next = arc.head;
            }
        }
        if (next < 0) return {};  // unreachable; defensive, rdist said otherwise
        path.push_back(next);
        v = next;
    }
    return path;
}

std::vector<std::string> validate(const Instance& instance) {
    std::vector<std::string> violations;
    const FlatNetwork& net = instance.network;
    auto report = [&violations](const std::string& text) { violations.push_back(text); };

    std::map<std::pair<NodeId, NodeId>, int> seen_pairs;
    for (ArcId a = 0; a < net.num_arcs(); ++a) {
        const Arc& arc = net.arc(a);
        std::ostringstream tag;
        tag << "arc " << a << " (" << arc.tail << "->" << arc.head << ")";
        if (arc.tail == arc.head) report(tag.str() + ": self-loop");
        if (++seen_pairs[{arc.tail, arc.head}] > 1) report(tag.str() + ": duplicate (tail, head) pair");
        if (arc.transit < 1) report(tag.str() + ": transit_time < 1");
        if (arc.capacity < 1) report(tag.str() + ": capacity < 1");
        if (!(arc.fixed_cost > 0.0)) report(tag.str() + ": fixed_cost <= 0");
        if (arc.var_cost < 0.0) report(tag.str() + ": var_cost < 0");
    }

    int min_release = std::numeric_limits<int>::max();
    int max_deadline = std::numeric_limits<int>::min();
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        const Commodity& k = instance.commodities[i];
        std::ostringstream tag;
        tag << "commodity " << k.id;
        if (k.id != static_cast<int>(i)) report(tag.str() + ": id does not match position");
        if (k.origin == k.dest) report(tag.str() + ": origin equals destination");
        if (k.origin < 0 || k.origin >= net.num_nodes() || k.dest < 0 || k.dest >= net.num_nodes()) {
            report(tag.str() + ": endpoint out of range");
            continue;
        }
        if (!(k.demand > 0.0)) report(tag.str() + ": demand <= 0");
        if (k.release < 0) report(tag.str() + ": release < 0");
        if (!(k.release < k.deadline)) {
            report(tag.str() + ": r_k < l_k fails");
            continue;
        }
        if (k.deadline > instance.horizon) report(tag.str() + ": deadline exceeds horizon");

        bool subgraph_ok = true;
        bool origin_incident = false;
        bool dest_incident = false;
        for (ArcId a : k.subgraph) {
            if (a < 0 || a >= net.num_arcs()) {
                report(tag.str() + ": subgraph arc id out of range");
                subgraph_ok = false;
                break;
            }
            const Arc& arc = net.arc(a);
            if (arc.tail == k.origin || arc.head == k.origin) origin_incident = true;
            if (arc.tail == k.dest || arc.head == k.dest) dest_incident = true;
        }
        if (!subgraph_ok) continue;
        if (!origin_incident) report(tag.str() + ": origin not an endpoint of any subgraph arc");
        if (!dest_incident) report(tag.str() + ": destination not an endpoint of any subgraph arc");
        const int transit = shortest_transit(net, k.subgraph, k.origin, k.dest);
        if (transit < 0) {
            report(tag.str() + ": no feasible path in subgraph");
        } else if (transit > k.deadline - k.release) {
            std::ostringstream text;
            text << tag.str() << ": shortest transit " << transit << " exceeds window "
                 << (k.deadline - k.release);
            report(text.str());
        }
        min_release = std::min(min_release, k.release);
        max_deadline = std::max(max_deadline, k.deadline);
    }

    if (!instance.commodities.empty()) {
        if (min_release != 0) report("instance: minimum release time is not 0");
        if (max_deadline != instance.horizon) report("instance: horizon differs from max deadline");
    }
    if (instance.hub_layout) {
        const HubLayout& hubs = *instance.hub_layout;
        if (static_cast<int>(hubs.region.size()) != net.num_nodes()) {
            report("hub layout: region labels missing for some nodes");
        }
        for (NodeId h : hubs.hubs) {
            if (h < 0 || h >= net.num_nodes()) report("hub layout: hub id out of range");
        }
    }
    return violations;
}

std::vector<ArcId> preprocess_subgraph(const Instance& instance, int k) {
    const Commodity& com = instance.commodities[static_cast<std::size_t>(k)];
    const FlatNetwork& net = instance.network;
    const SubAdjacency adj(net, com.subgraph);
    const auto from_origin = reachable_from(net, adj, com.origin);
    const auto to_dest = reaches_to(net, adj, com.dest);

    std::vector<ArcId> kept;
    for (ArcId a : com.subgraph) {
        const Arc& arc = net.arc(a);
        if (arc.tail == com.dest) continue;
        if (!from_origin[static_cast<std::size_t>(arc.tail)]) continue;
        if (!to_dest[static_cast<std::size_t>(arc.head)]) continue;
        kept.push_back(a);
    }
    std::sort(kept.begin(), kept.end());
    if (shortest_transit(net, kept, com.origin, com.dest) < 0) {
        std::ostringstream text;
        text << "commodity " << com.id << " infeasible: preprocessing removed every origin->destination path";
        throw std::runtime_error(text.str());
    }
    return kept;
}

Instance preprocess(Instance instance) {
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        instance.commodities[i].subgraph = preprocess_subgraph(instance, static_cast<int>(i));
    }
    return instance;
}

}  // namespace sndrr
