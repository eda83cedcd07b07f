#ifndef SNDRR_TEST_UTIL_HPP
#define SNDRR_TEST_UTIL_HPP

#include <vector>

#include "sndrr/instance.hpp"
#include "sndrr/rng.hpp"

namespace sndrr::testutil {

struct ArcSpec {
    NodeId tail;
    NodeId head;
    int transit = 1;
    double fixed_cost = 1.0;
    int capacity = 1;
    double var_cost = 0.0;
};

struct CommoditySpec {
    NodeId origin;
    NodeId dest;
    double demand = 1.0;
    int release = 0;
    int deadline = 1;
    std::vector<ArcId> subgraph;  // empty = full network
};

inline Instance make_instance(int nodes, const std::vector<ArcSpec>& arc_specs,
                              const std::vector<CommoditySpec>& commodity_specs) {
    std::vector<Arc> arcs;
    for (const ArcSpec& s : arc_specs) {
        arcs.push_back({s.tail, s.head, s.transit, s.fixed_cost, s.capacity, s.var_cost});
    }
    Instance instance;
    instance.network = FlatNetwork(nodes, std::move(arcs));
    int horizon = 1;
    for (std::size_t i = 0; i < commodity_specs.size(); ++i) {
        const CommoditySpec& s = commodity_specs[i];
        Commodity k;
        k.id = static_cast<int>(i);
        k.origin = s.origin;
        k.dest = s.dest;
        k.demand = s.demand;
        k.release = s.release;
        k.deadline = s.deadline;
        k.subgraph = s.subgraph.empty() ? full_arc_set(instance.network) : s.subgraph;
        horizon = std::max(horizon, k.deadline);
        instance.commodities.push_back(std::move(k));
    }
    instance.horizon = horizon;
    return instance;
}

// STAR(m): center node 0, leaves 1..m, unit transit. Two commodities per
// leaf with staggered releases 2i-1 and 2i, unit-window deadlines, horizon
// 2m+1. Designated networks are the single connecting arc.
inline Instance star_instance(int m) {
    std::vector<ArcSpec> arcs;
    for (int i = 1; i <= m; ++i) arcs.push_back({0, i, 1, 1.0, 1, 0.0});
    std::vector<CommoditySpec> commodities;
    for (int i = 1; i <= m; ++i) {
        for (int j = 0; j < 2; ++j) {
            const int release = 2 * i - 1 + j;
            commodities.push_back({0, i, 1.0, release, release + 1, {i - 1}});
        }
    }
    Instance instance = make_instance(m + 1, arcs, commodities);
    instance.horizon = 2 * m + 1;
    for (Commodity& k : instance.commodities) k.deadline = std::min(k.deadline, instance.horizon);
    return instance;
}

// Random small instance: connected enough for every commodity, integral
// data kept small so exact solves stay fast. Subgraphs are randomly full,
// a random connected subset, or a single path.
inline Instance random_small_instance(Rng& rng, int max_nodes = 8, int max_arcs = 20,
                                      int max_commodities = 6, int max_horizon = 15) {
    for (;;) {
        const int nodes = rng.uniform_int(3, max_nodes);
        std::vector<std::pair<NodeId, NodeId>> pairs;
        for (NodeId v = 0; v < nodes; ++v) {
            for (NodeId w = 0; w < nodes; ++w) {
                if (v != w) pairs.emplace_back(v, w);
            }
        }
        rng.shuffle(pairs);
        const int want_arcs =
            rng.uniform_int(nodes, std::min(max_arcs, static_cast<int>(pairs.size())));
        pairs.resize(static_cast<std::size_t>(want_arcs));
        std::sort(pairs.begin(), pairs.end());

        std::vector<ArcSpec> arcs;
        for (const auto& [v, w] : pairs) {
            ArcSpec spec{v, w};
            spec.transit = rng.uniform_int(1, 4);
            spec.fixed_cost = rng.uniform_int(2, 30);
            spec.capacity = rng.uniform_int(2, 12);
            spec.var_cost = rng.uniform_int(0, 3);
            arcs.push_back(spec);
        }
        Instance instance = make_instance(nodes, arcs, {});

        const int commodities = rng.uniform_int(1, max_commodities);
        const std::vector<ArcId> all = full_arc_set(instance.network);
        bool ok = true;
        for (int i = 0; i < commodities && ok; ++i) {
            Commodity k;
            k.id = i;
            bool found = false;
            for (int attempt = 0; attempt < 50; ++attempt) {
                k.origin = rng.uniform_int(0, nodes - 1);
                k.dest = rng.uniform_int(0, nodes - 1);
                if (k.origin == k.dest) continue;
                if (shortest_transit(instance.network, all, k.origin, k.dest) > 0) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                ok = false;
                break;
            }
            k.demand = rng.uniform_int(1, 9);
            k.subgraph = all;
            const int choice = rng.uniform_int(0, 2);
            if (choice == 1) {
                const auto path = lex_shortest_path(instance.network, all, k.origin, k.dest);
                std::vector<ArcId> sub;
                for (std::size_t p = 0; p + 1 < path.size(); ++p) {
                    sub.push_back(*instance.network.find_arc(path[p], path[p + 1]));
                }
                std::sort(sub.begin(), sub.end());
                k.subgraph = sub;
            } else if (choice == 2) {
                // Random subset that keeps the commodity feasible.
                std::vector<ArcId> sub = all;
                for (int drop = 0; drop < static_cast<int>(all.size()) / 3; ++drop) {
                    const int pos = rng.uniform_int(0, static_cast<int>(sub.size()) - 1);
                    std::vector<ArcId> candidate = sub;
                    candidate.erase(candidate.begin() + pos);
                    if (shortest_transit(instance.network, candidate, k.origin, k.dest) > 0) {
                        sub = std::move(candidate);
                    }
                }
                k.subgraph = sub;
            }
            const int sp = shortest_transit(instance.network, k.subgraph, k.origin, k.dest);
            const int slack = rng.uniform_int(0, 4);
            k.release = rng.uniform_int(0, 3);
            k.deadline = k.release + sp + slack;
            if (k.deadline > max_horizon) {
                ok = false;
                break;
            }
            instance.commodities.push_back(std::move(k));
        }
        if (!ok || instance.commodities.empty()) continue;
        // Shift releases so the earliest is zero, set the horizon.
        int min_release = instance.commodities.front().release;
        for (const Commodity& k : instance.commodities) min_release = std::min(min_release, k.release);
        int horizon = 1;
        for (Commodity& k : instance.commodities) {
            k.release -= min_release;
            k.deadline -= min_release;
            horizon = std::max(horizon, k.deadline);
        }
        instance.horizon = horizon;
        if (!validate(instance).empty()) continue;
        return instance;
    }
}

}  // namespace sndrr::testutil

#endif  // SNDRR_TEST_UTIL_HPP
