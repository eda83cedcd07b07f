#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "sndrr/instance.hpp"
#include "sndrr/instance_io.hpp"
#include "sndrr/rng.hpp"
#include "test_util.hpp"

using namespace sndrr;
using namespace sndrr::testutil;

TEST_CASE("validate accepts the minimal feasible instance") {
    const Instance instance = make_instance(2, {{0, 1, 1}}, {{0, 1, 1.0, 0, 1}});
    CHECK(validate(instance).empty());
}

TEST_CASE("validate rejects a deadline at or before the release") {
    Instance instance = make_instance(2, {{0, 1, 1}}, {{0, 1, 1.0, 0, 1}});
    instance.commodities[0].deadline = 0;
    const auto violations = validate(instance);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("r_k < l_k fails") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("validate flags a subgraph with no feasible path") {
    // Two arcs 0->1->2, but the commodity's designated network omits the arc
    // leaving its origin.
    Instance instance = make_instance(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2, 1.0, 0, 2, {1}}});
    const auto violations = validate(instance);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("no feasible path") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("validate flags a window shorter than the shortest transit") {
    const Instance instance = make_instance(2, {{0, 1, 5}}, {{0, 1, 1.0, 0, 3}});
    const auto violations = validate(instance);
    REQUIRE(!violations.empty());
    CHECK(violations.front().find("shortest transit") != std::string::npos);
}

TEST_CASE("preprocess removes arcs off every origin-destination walk") {
    // Path 0->1->2 plus the return arc 2->0; commodity 0->2 keeps the path only.
    const Instance instance =
        make_instance(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, {{0, 2, 1.0, 0, 2}});
    const auto reduced = preprocess_subgraph(instance, 0);
    CHECK(reduced == std::vector<ArcId>{0, 1});
}

TEST_CASE("preprocess keeps only the connecting arc of a star") {
    const Instance instance = make_instance(3, {{0, 1, 1}, {0, 2, 1}}, {{0, 1, 1.0, 0, 1}});
    CHECK(preprocess_subgraph(instance, 0) == std::vector<ArcId>{0});
}

TEST_CASE("preprocess is a fixed point on minimal subgraphs") {
    const Instance instance =
        make_instance(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2, 1.0, 0, 2, {0, 1}}});
    CHECK(preprocess_subgraph(instance, 0) == std::vector<ArcId>{0, 1});
}

TEST_CASE("preprocess soundness: removed arcs fail a reachability test") {
    Rng rng(20240811);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance instance = random_small_instance(rng);
        for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
            const Commodity& k = instance.commodities[ki];
            const auto reduced = preprocess_subgraph(instance, static_cast<int>(ki));
            for (ArcId a : k.subgraph) {
                if (std::binary_search(reduced.begin(), reduced.end(), a)) continue;
                const Arc& arc = instance.network.arc(a);
                // Independent oracle: origin->tail or head->dest must fail
                // inside the original designated network (or the arc leaves
                // the destination).
                const bool leaves_dest = arc.tail == k.dest;
                const bool tail_reachable =
                    shortest_transit(instance.network, k.subgraph, k.origin, arc.tail) >= 0;
                const bool head_reaches =
                    shortest_transit(instance.network, k.subgraph, arc.head, k.dest) >= 0;
                CHECK((leaves_dest || !tail_reachable || !head_reaches));
            }
            // The reduction never breaks feasibility.
            CHECK(shortest_transit(instance.network, reduced, k.origin, k.dest) >= 0);
        }
    }
}

TEST_CASE("lexicographic shortest path prefers smaller node sequences on ties") {
    // Two transit-3 routes 0->1->3 and 0->2->3; the sequence through node 1 wins.
    const Instance instance = make_instance(
        4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 2}, {2, 3, 2}}, {{0, 3, 1.0, 0, 3}});
    const auto path = lex_shortest_path(instance.network, instance.commodities[0].subgraph, 0, 3);
    CHECK(path == std::vector<NodeId>{0, 1, 3});
}

TEST_CASE("instance files round-trip and emit deterministically") {
    Rng rng(7);
    const Instance instance = random_small_instance(rng);
    const std::string once = instance_to_string(instance);
    std::istringstream in(once);
    const Instance parsed = read_instance(in);
    const std::string twice = instance_to_string(parsed);
    CHECK(once == twice);
    CHECK(parsed.network.num_nodes() == instance.network.num_nodes());
    CHECK(parsed.network.num_arcs() == instance.network.num_arcs());
    CHECK(parsed.commodities.size() == instance.commodities.size());
    CHECK(parsed.horizon == instance.horizon);
    for (std::size_t i = 0; i < parsed.commodities.size(); ++i) {
        CHECK(parsed.commodities[i].subgraph == instance.commodities[i].subgraph);
        CHECK(parsed.commodities[i].demand == instance.commodities[i].demand);
    }
}

TEST_CASE("hub layout survives the file format") {
    Instance instance = make_instance(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}},
                                      {{0, 2, 1.0, 0, 4}});
    instance.hub_layout = HubLayout{{1}, {0, 0, 0}};
    const std::string text = instance_to_string(instance);
    std::istringstream in(text);
    const Instance parsed = read_instance(in);
    REQUIRE(parsed.hub_layout.has_value());
    CHECK(parsed.hub_layout->hubs == std::vector<NodeId>{1});
    CHECK(parsed.hub_layout->region == std::vector<int>{0, 0, 0});
}
