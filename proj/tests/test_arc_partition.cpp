#include <set>
#include <sstream>

#include "doctest.h"
#include "sndrr/arc_partition.hpp"
#include "sndrr/generate.hpp"
#include "test_util.hpp"

using namespace sndrr;
using namespace sndrr::testutil;

namespace {

// The running example: arcs 0: v1->v2, 1: v2->v3, 2: v2->v4.
Instance fork_instance() {
    return make_instance(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}},
                         {{0, 3, 1.0, 0, 2, {0, 2}}, {0, 2, 1.0, 0, 2, {0, 1}}});
}

std::vector<NodeId> random_simple_path(const FlatNetwork& net, Rng& rng) {
    for (;;) {
        std::vector<NodeId> path{rng.uniform_int(0, net.num_nodes() - 1)};
        std::set<NodeId> seen{path.front()};
        while (true) {
            std::vector<NodeId> candidates;
            for (ArcId a : net.out_arcs(path.back())) {
                if (!seen.count(net.arc(a).head)) candidates.push_back(net.arc(a).head);
            }
            if (candidates.empty() || (path.size() > 1 && rng.uniform_int(0, 2) == 0)) break;
            const NodeId next = candidates[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
            path.push_back(next);
            seen.insert(next);
        }
        if (path.size() >= 2) return path;
    }
}

}  // namespace

TEST_CASE("finest partition keeps singletons for designated paths") {
    const Instance instance = fork_instance();
    const ArcPartition partition = finest_valid_partition(instance);
    CHECK(partition.num_parts(0) == 1);
    CHECK(partition.num_parts(1) == 2);  // arcs 1 and 2 serve different commodities
    CHECK(partition.valid_for(instance));
}

TEST_CASE("a commodity free to use the whole network forces full merges") {
    Instance instance = make_instance(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 2, 1}},
                                      {{0, 2, 1.0, 0, 4}});
    instance = preprocess(std::move(instance));
    const ArcPartition partition = finest_valid_partition(instance);
    // At the branching node both outgoing arcs are usable by the commodity.
    CHECK(partition.num_parts(1) == 1);
    CHECK(partition.valid_for(instance));
}

TEST_CASE("overlapping commodities merge parts transitively") {
    // Node 0 with arcs to 1, 2, 3; one commodity may use {0,1}, another {1,2}.
    const Instance instance = make_instance(
        4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}},
        {{0, 1, 1.0, 0, 1, {0, 1}}, {0, 2, 1.0, 0, 1, {1, 2}}});
    // Union-find oracle: arcs 0,1 merge, then 1,2 -> a single part of size 3.
    const ArcPartition partition = finest_valid_partition(instance);
    REQUIRE(partition.num_parts(0) == 1);
    CHECK(partition.parts(0)[0] == std::vector<ArcId>{0, 1, 2});
}

TEST_CASE("source-node exemption only lifts merges from foreign commodities") {
    // Node 0 has no incoming arcs; the commodity originating there still
    // forces its own merge.
    const Instance instance = make_instance(
        3, {{0, 1, 1}, {0, 2, 1}},
        {{0, 1, 1.0, 0, 1, {0, 1}}});
    const ArcPartition strict = finest_valid_partition(instance, false);
    const ArcPartition relaxed = finest_valid_partition(instance, true);
    CHECK(strict.num_parts(0) == 1);
    CHECK(relaxed.num_parts(0) == 1);
}

TEST_CASE("hub partition splits hubs into regional and national parts") {
    HubSpokeParams params;
    params.nodes = 14;
    params.hubs = 3;
    params.arcs = 30;
    params.commodities = 10;
    params.seed = 9;
    Instance instance = generate_hub_spoke_flat(params);
    instance = preprocess(std::move(instance));
    const ArcPartition partition = hub_spoke_partition(instance);
    CHECK(partition.valid_for(instance));

    const HubLayout& layout = *instance.hub_layout;
    std::set<NodeId> hubs(layout.hubs.begin(), layout.hubs.end());
    for (NodeId v = 0; v < instance.network.num_nodes(); ++v) {
        if (instance.network.out_arcs(v).empty()) continue;
        if (hubs.count(v)) {
            int regional = 0;
            int national = 0;
            for (ArcId a : instance.network.out_arcs(v)) {
                const Arc& arc = instance.network.arc(a);
                if (layout.region[static_cast<std::size_t>(arc.tail)] ==
                    layout.region[static_cast<std::size_t>(arc.head)]) {
                    ++regional;
                } else {
                    ++national;
                }
            }
            const int expected = (regional > 0 ? 1 : 0) + (national > 0 ? 1 : 0);
            CHECK(partition.num_parts(v) == expected);
        } else {
            CHECK(partition.num_parts(v) == 1);
        }
    }
}

TEST_CASE("hub partition requires region labels") {
    const Instance instance = fork_instance();
    CHECK_THROWS_AS(hub_spoke_partition(instance), std::invalid_argument);
}

TEST_CASE("auxiliary graph of the fork example") {
    const Instance instance = fork_instance();
    const AuxGraph aux(instance.network, singleton_partition(instance.network));
    CHECK(aux.num_aux_nodes() == 7);
    CHECK(aux.num_aux_arcs() == 5);

    // v1^1 -> (v2^0, v2^1, v2^2); v2^1 -> v3^0; v2^2 -> v4^0.
    const NodeId v1_1 = aux.aux_node(0, 1);
    CHECK(aux.departure_copy(0) == v1_1);
    CHECK(aux.graph().out_arcs(v1_1).size() == 3);
    const NodeId v2_1 = aux.aux_node(1, 1);
    const NodeId v2_2 = aux.aux_node(1, 2);
    REQUIRE(aux.graph().out_arcs(v2_1).size() == 1);
    REQUIRE(aux.graph().out_arcs(v2_2).size() == 1);
    CHECK(aux.graph().arc(aux.graph().out_arcs(v2_1)[0]).head == aux.terminal_copy(2));
    CHECK(aux.graph().arc(aux.graph().out_arcs(v2_2)[0]).head == aux.terminal_copy(3));
    CHECK(aux.graph().out_arcs(aux.terminal_copy(1)).empty());
}

TEST_CASE("trivial partition doubles nodes with outgoing arcs") {
    const Instance instance = fork_instance();
    const AuxGraph aux(instance.network, trivial_partition(instance.network));
    CHECK(aux.num_copies(0) == 2);
    CHECK(aux.num_copies(1) == 2);
    CHECK(aux.num_copies(2) == 1);  // sink: terminal copy only
    CHECK(aux.num_copies(3) == 1);
}

TEST_CASE("arcless graphs reduce to terminal copies") {
    const FlatNetwork net(3, {});
    const AuxGraph aux(net, trivial_partition(net));
    CHECK(aux.num_aux_nodes() == 3);
    CHECK(aux.num_aux_arcs() == 0);
}

TEST_CASE("aux sizes follow the counting formulas") {
    Rng rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        Instance instance = preprocess(random_small_instance(rng));
        const ArcPartition partition = finest_valid_partition(instance);
        const AuxGraph aux(instance.network, partition);
        long expected_nodes = 0;
        for (NodeId v = 0; v < instance.network.num_nodes(); ++v) {
            expected_nodes += partition.num_parts(v) + 1;
        }
        long expected_arcs = 0;
        for (const Arc& arc : instance.network.arcs()) {
            expected_arcs += partition.num_parts(arc.head) + 1;
        }
        CHECK(aux.num_aux_nodes() == expected_nodes);
        CHECK(aux.num_aux_arcs() == expected_arcs);
    }
}

TEST_CASE("commodity mapping gives one copy per designated node and arc") {
    SUBCASE("single-path subgraph walks its part copies") {
        Instance instance = fork_instance();
        instance = preprocess(std::move(instance));
        const AuxGraph aux(instance.network, finest_valid_partition(instance));
        const AuxCommodity mapped = map_commodity_subgraph(aux, instance, 0);
        CHECK(mapped.nodes.size() == instance.commodities[0].subgraph.size() + 1);
        CHECK(mapped.arcs.size() == instance.commodities[0].subgraph.size());
        CHECK(aux.copy_index(mapped.dest) == 0);
        CHECK(aux.flat_node(mapped.dest) == 3);
        CHECK(aux.flat_node(mapped.origin) == 0);
    }
    SUBCASE("single-arc subgraph maps to origin copy and terminal") {
        Instance instance = make_instance(2, {{0, 1, 1}}, {{0, 1, 1.0, 0, 1}});
        const AuxGraph aux(instance.network, trivial_partition(instance.network));
        const AuxCommodity mapped = map_commodity_subgraph(aux, instance, 0);
        CHECK(mapped.nodes.size() == 2);
        CHECK(mapped.arcs.size() == 1);
    }
    SUBCASE("counts match the designated network on random instances") {
        Rng rng(616);
        for (int trial = 0; trial < 20; ++trial) {
            Instance instance = preprocess(random_small_instance(rng));
            const AuxGraph aux(instance.network, finest_valid_partition(instance));
            for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
                const Commodity& k = instance.commodities[ki];
                std::set<NodeId> nodes;
                for (ArcId a : k.subgraph) {
                    nodes.insert(instance.network.arc(a).tail);
                    nodes.insert(instance.network.arc(a).head);
                }
                const AuxCommodity mapped =
                    map_commodity_subgraph(aux, instance, static_cast<int>(ki));
                CHECK(mapped.nodes.size() == nodes.size());
                CHECK(mapped.arcs.size() == k.subgraph.size());
            }
        }
    }
    SUBCASE("unreduced designated networks are rejected") {
        // Arc leaving the destination survives without preprocessing.
        Instance instance =
            make_instance(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, {{0, 2, 1.0, 0, 2}});
        const AuxGraph aux(instance.network, trivial_partition(instance.network));
        CHECK_THROWS_AS(map_commodity_subgraph(aux, instance, 0), std::invalid_argument);
    }
}

TEST_CASE("path bijection on the fork example") {
    const Instance instance = fork_instance();
    const AuxGraph aux(instance.network, singleton_partition(instance.network));
    const std::vector<NodeId> path{0, 1, 3};
    const std::vector<NodeId> image = phi(aux, path);
    REQUIRE(image.size() == 3);
    CHECK(image[0] == aux.aux_node(0, 1));
    CHECK(image[1] == aux.aux_node(1, 2));  // the copy housing arc v2->v4
    CHECK(image[2] == aux.terminal_copy(3));
    CHECK(phi_inverse(aux, image) == path);
}

TEST_CASE("a single-node path maps to the terminal copy") {
    const Instance instance = fork_instance();
    const AuxGraph aux(instance.network, singleton_partition(instance.network));
    CHECK(phi(aux, {2}) == std::vector<NodeId>{aux.terminal_copy(2)});
}

TEST_CASE("phi rejects non-dipaths and phi_inverse rejects non-terminal ends") {
    const Instance instance = fork_instance();
    const AuxGraph aux(instance.network, singleton_partition(instance.network));
    CHECK_THROWS_AS(phi(aux, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(phi_inverse(aux, {aux.aux_node(0, 1)}), std::invalid_argument);
}

TEST_CASE("phi round-trips random simple paths") {
    Rng rng(2718);
    int round_trips = 0;
    while (round_trips < 300) {
        Instance instance = preprocess(random_small_instance(rng));
        const AuxGraph aux(instance.network, finest_valid_partition(instance));
        for (int i = 0; i < 10; ++i) {
            const std::vector<NodeId> path = random_simple_path(instance.network, rng);
            const std::vector<NodeId> image = phi(aux, path);
            CHECK(phi_inverse(aux, image) == path);
            ++round_trips;
        }
    }
}

TEST_CASE("trajectory bijection preserves departures both ways") {
    Rng rng(1414);
    int round_trips = 0;
    while (round_trips < 200) {
        Instance instance = preprocess(random_small_instance(rng));
        const AuxGraph aux(instance.network, finest_valid_partition(instance));
        const PartialNetwork full =
            PartialNetwork::build_full(instance.network, instance.horizon);
        for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
            const Commodity& k = instance.commodities[ki];
            const auto path = lex_shortest_path(instance.network, k.subgraph, k.origin, k.dest);
            Trajectory trajectory;
            trajectory.commodity = static_cast<int>(ki);
            TimedNode at{k.origin, k.release};
            for (std::size_t p = 0; p + 1 < path.size(); ++p) {
                const ArcId a = *instance.network.find_arc(path[p], path[p + 1]);
                const int arrive = at.time + instance.network.arc(a).transit;
                trajectory.arcs.push_back({at, {path[p + 1], arrive}, TimedArcKind::movement, a});
                at = {path[p + 1], arrive};
            }
            const Trajectory image = phi_trajectory(aux, trajectory);
            const auto original_moves = trajectory.movement_arcs();
            const auto image_moves = image.movement_arcs();
            REQUIRE(original_moves.size() == image_moves.size());
            for (std::size_t i = 0; i < image_moves.size(); ++i) {
                CHECK(image_moves[i].tail.time == original_moves[i].tail.time);
                CHECK(aux.flat_arc(image_moves[i].flat_arc) == original_moves[i].flat_arc);
            }
            const Trajectory back = phi_trajectory_inverse(aux, image);
            CHECK(back.flat_path() == trajectory.flat_path());
            const auto back_moves = back.movement_arcs();
            for (std::size_t i = 0; i < back_moves.size(); ++i) {
                CHECK(back_moves[i].tail.time == original_moves[i].tail.time);
            }
            ++round_trips;
        }
    }
}

TEST_CASE("consolidation classes bucket aux copies by flat arc and departure") {
    const Instance instance = fork_instance();
    const AuxGraph aux(instance.network, singleton_partition(instance.network));
    const PartialNetwork aux_full = PartialNetwork::build_full(aux.graph(), 2);
    const ConsolidationClasses classes = compute_consolidation_classes(aux, aux_full);

    // Copies of flat arc 0 departing time 0: one per copy of v2.
    const ConsolidationClass* entry = classes.find(0, 0);
    REQUIRE(entry != nullptr);
    CHECK(entry->members.size() == 3);
    // Every aux movement arc lands in exactly one class.
    long total = 0;
    std::set<std::pair<ArcId, int>> seen;
    for (const auto& e : classes.entries) {
        for (const auto& [aux_arc, tail, head] : e.members) {
            CHECK(seen.insert({aux_arc, tail}).second);
            ++total;
        }
    }
    CHECK(total == aux_full.num_movement_arcs());
}

TEST_CASE("classes partition the aux movement arcs on random partial networks") {
    Rng rng(909);
    for (int trial = 0; trial < 25; ++trial) {
        Instance instance = preprocess(random_small_instance(rng));
        const AuxGraph aux(instance.network, finest_valid_partition(instance));
        std::vector<AuxCommodity> mapped;
        for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
            mapped.push_back(map_commodity_subgraph(aux, instance, static_cast<int>(ki)));
        }
        PartialNetwork aux_partial = PartialNetwork::build(
            aux.graph(), instance.horizon, initial_aux_timed_nodes(aux, instance, mapped));
        for (int extra = rng.uniform_int(0, 8); extra > 0; --extra) {
            const NodeId u = rng.uniform_int(0, aux.num_aux_nodes() - 1);
            const int t = rng.uniform_int(1, instance.horizon);
            if (!aux_partial.has_time(u, t)) aux_partial.refine(u, t);
        }
        const ConsolidationClasses classes = compute_consolidation_classes(aux, aux_partial);
        long total = 0;
        std::set<std::tuple<ArcId, int, int>> seen;
        for (const auto& e : classes.entries) {
            for (const auto& [aux_arc, tail, head] : e.members) {
                CHECK(aux.flat_arc(aux_arc) == e.flat_arc);
                CHECK(tail == e.depart);
                CHECK(seen.insert({aux_arc, tail, head}).second);
                ++total;
            }
        }
        CHECK(total == aux_partial.num_movement_arcs());

        // The projection merges copy times per flat node.
        const PartialNetwork projection = project_to_flat(aux, aux_partial);
        for (NodeId v = 0; v < instance.network.num_nodes(); ++v) {
            std::set<int> expected;
            for (int c = 0; c < aux.num_copies(v); ++c) {
                for (int t : aux_partial.times(aux.aux_node(v, c))) expected.insert(t);
            }
            CHECK(projection.times(v) == std::vector<int>(expected.begin(), expected.end()));
        }
        // Every projection movement arc has a class (possibly empty).
        for (ArcId a = 0; a < instance.network.num_arcs(); ++a) {
            for (const auto& [t, h] : projection.movements(a)) {
                (void)h;
                // No class is required to exist, but a class with this key
                // must reference only this departure.
                const ConsolidationClass* entry = classes.find(a, t);
                if (entry != nullptr) CHECK(entry->depart == t);
            }
        }
    }
}

TEST_CASE("partition dump lists parts per node") {
    const Instance instance = fork_instance();
    const ArcPartition partition = finest_valid_partition(instance);
    std::ostringstream out;
    partition.dump(out);
    CHECK(out.str().find("node 1: {1} {2}") != std::string::npos);
}
