#include <set>

#include "doctest.h"
#include "sndrr/generate.hpp"
#include "sndrr/instance_io.hpp"
#include "test_util.hpp"

using namespace sndrr;

TEST_CASE("crainic generator hits the requested ratios within 1%") {
    CrainicParams params;
    params.nodes = 20;
    params.arcs = 230;
    params.commodities = 150;
    params.cost_ratio = 0.05;
    params.capacity_ratio = 1.0;
    params.seed = 42;
    const Instance instance = generate_crainic_flat(params);
    CHECK(validate(instance).empty());
    CHECK(instance.network.num_arcs() == 230);
    CHECK(static_cast<int>(instance.commodities.size()) == 150);
    CHECK(std::abs(measured_cost_ratio(instance) / params.cost_ratio - 1.0) <= 0.01);
    CHECK(std::abs(measured_capacity_ratio(instance) / params.capacity_ratio - 1.0) <= 0.01);
}

TEST_CASE("crainic generator holds ratios on a tiny high-capacity instance") {
    CrainicParams params;
    params.nodes = 5;
    params.arcs = 10;
    params.commodities = 3;
    params.cost_ratio = 0.1;
    params.capacity_ratio = 8.0;
    params.seed = 7;
    const Instance instance = generate_crainic_flat(params);
    CHECK(std::abs(measured_cost_ratio(instance) / params.cost_ratio - 1.0) <= 0.01);
    CHECK(std::abs(measured_capacity_ratio(instance) / params.capacity_ratio - 1.0) <= 0.01);
}

TEST_CASE("crainic generation is byte-deterministic per seed") {
    CrainicParams params;
    params.nodes = 10;
    params.arcs = 40;
    params.commodities = 12;
    params.seed = 99;
    const std::string a = instance_to_string(generate_crainic_flat(params));
    const std::string b = instance_to_string(generate_crainic_flat(params));
    CHECK(a == b);
    params.seed = 100;
    CHECK(instance_to_string(generate_crainic_flat(params)) != a);
}

TEST_CASE("timed attributes accept the paper's parameter grid and stay feasible") {
    CrainicParams params;
    params.nodes = 10;
    params.arcs = 40;
    params.commodities = 12;
    params.seed = 5;
    const Instance flat = generate_crainic_flat(params);
    for (double sigma : {1.0 / 3.0, 1.0 / 6.0, 1.0 / 9.0}) {
        for (double mu : {0.25, 0.375}) {
            const Instance timed = generate_timed_attributes_scaled(flat, sigma, mu, 11);
            CHECK(validate(timed).empty());
            int min_release = timed.commodities.front().release;
            for (const Commodity& k : timed.commodities) {
                min_release = std::min(min_release, k.release);
                const int sp = shortest_transit(timed.network, k.subgraph, k.origin, k.dest);
                CHECK(k.deadline - k.release >= sp);
            }
            CHECK(min_release == 0);
        }
    }
}

TEST_CASE("degenerate normal draws give identical releases") {
    CrainicParams params;
    params.nodes = 8;
    params.arcs = 30;
    params.commodities = 6;
    params.seed = 3;
    Instance flat = assign_transit_times(generate_crainic_flat(params), 10);
    const Instance timed = generate_timed_attributes(flat, 0.0, 0.0, 17, /*keep_transit=*/true);
    for (const Commodity& k : timed.commodities) CHECK(k.release == 0);
}

TEST_CASE("designated paths are shortest and tie-broken lexicographically") {
    using namespace sndrr::testutil;
    SUBCASE("unique shortest route wins") {
        Instance instance = make_instance(
            4, {{0, 1, 1}, {1, 3, 2}, {0, 2, 2}, {2, 3, 3}}, {{0, 3, 1.0, 0, 6}});
        instance = assign_designated_paths(std::move(instance));
        CHECK(instance.commodities[0].subgraph == std::vector<ArcId>{0, 1});
    }
    SUBCASE("ties break to the smaller node sequence") {
        Instance instance = make_instance(
            4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 2}, {2, 3, 2}}, {{0, 3, 1.0, 0, 3}});
        instance = assign_designated_paths(std::move(instance));
        CHECK(instance.commodities[0].subgraph == std::vector<ArcId>{0, 2});
    }
    SUBCASE("random instances match an independent shortest-path oracle") {
        CrainicParams params;
        params.nodes = 12;
        params.arcs = 60;
        params.commodities = 20;
        params.seed = 8;
        Instance instance =
            generate_timed_attributes_scaled(generate_crainic_flat(params), 1.0 / 6.0, 0.25, 21);
        const Instance full = instance;
        instance = assign_designated_paths(std::move(instance));
        for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
            const Commodity& k = instance.commodities[i];
            int path_transit = 0;
            for (ArcId a : k.subgraph) path_transit += instance.network.arc(a).transit;
            const int oracle = shortest_transit(full.network, full.commodities[i].subgraph,
                                                k.origin, k.dest);
            CHECK(path_transit == oracle);
        }
    }
}

TEST_CASE("hub-and-spoke generator respects the region structure") {
    HubSpokeParams params;
    params.nodes = 20;
    params.hubs = 4;
    params.arcs = 55;
    params.commodities = 30;
    params.seed = 12;
    const Instance instance = generate_hub_spoke_flat(params);
    CHECK(validate(instance).empty());
    REQUIRE(instance.hub_layout.has_value());
    const HubLayout& layout = *instance.hub_layout;
    CHECK(static_cast<int>(layout.hubs.size()) == 4);
    CHECK(instance.network.num_arcs() == 55);

    std::set<NodeId> hubs(layout.hubs.begin(), layout.hubs.end());
    int national = 0;
    for (const Arc& arc : instance.network.arcs()) {
        const bool same_region = layout.region[static_cast<std::size_t>(arc.tail)] ==
                                 layout.region[static_cast<std::size_t>(arc.head)];
        if (!same_region) {
            CHECK(hubs.count(arc.tail));
            CHECK(hubs.count(arc.head));
            ++national;
        }
    }
    CHECK(national == 4 * 3);  // every ordered hub pair
    CHECK(std::abs(measured_cost_ratio(instance) / params.cost_ratio - 1.0) <= 0.01);
    CHECK(std::abs(measured_capacity_ratio(instance) / params.capacity_ratio - 1.0) <= 0.01);
}

TEST_CASE("hubs equal to nodes make every arc national") {
    HubSpokeParams params;
    params.nodes = 5;
    params.hubs = 5;
    params.arcs = 20;
    params.commodities = 4;
    params.seed = 4;
    const Instance instance = generate_hub_spoke_flat(params);
    const HubLayout& layout = *instance.hub_layout;
    for (const Arc& arc : instance.network.arcs()) {
        CHECK(layout.region[static_cast<std::size_t>(arc.tail)] !=
              layout.region[static_cast<std::size_t>(arc.head)]);
    }
}

TEST_CASE("critical times only widen feasibility windows") {
    CrainicParams params;
    params.nodes = 10;
    params.arcs = 40;
    params.commodities = 15;
    params.seed = 31;
    const Instance timed =
        generate_timed_attributes_scaled(generate_crainic_flat(params), 1.0 / 6.0, 0.25, 32);
    for (int alpha : {1, 5, 10}) {
        const Instance critical = apply_critical_times(timed, alpha, 33);
        CHECK(validate(critical).empty());
        CHECK(critical.horizon == timed.horizon);
        for (std::size_t i = 0; i < timed.commodities.size(); ++i) {
            CHECK(critical.commodities[i].release <= timed.commodities[i].release);
            CHECK(critical.commodities[i].deadline >= timed.commodities[i].deadline);
        }
    }
}

TEST_CASE("rounded releases are critical times of the origin or zero") {
    CrainicParams params;
    params.nodes = 8;
    params.arcs = 30;
    params.commodities = 10;
    params.seed = 55;
    const Instance timed =
        generate_timed_attributes_scaled(generate_crainic_flat(params), 1.0 / 3.0, 0.375, 56);
    const int alpha = 5;
    const std::uint64_t seed = 57;
    const Instance critical = apply_critical_times(timed, alpha, seed);

    // Replay the draw sequence to recover the emitted critical-time sets.
    Rng rng(seed);
    std::vector<std::set<int>> sets(static_cast<std::size_t>(timed.network.num_nodes()));
    for (NodeId v = 0; v < timed.network.num_nodes(); ++v) {
        for (int i = 0; i < alpha; ++i) {
            const int lo = static_cast<int>((static_cast<long long>(i) * timed.horizon) / alpha);
            int hi = static_cast<int>((static_cast<long long>(i + 1) * timed.horizon) / alpha) - 1;
            if (i == alpha - 1) hi = timed.horizon;
            if (hi < lo) hi = lo;
            sets[static_cast<std::size_t>(v)].insert(rng.uniform_int(lo, hi));
        }
    }
    for (const Commodity& k : critical.commodities) {
        const auto& at_origin = sets[static_cast<std::size_t>(k.origin)];
        CHECK((k.release == 0 || at_origin.count(k.release) == 1));
        const auto& at_dest = sets[static_cast<std::size_t>(k.dest)];
        CHECK((k.deadline == critical.horizon || at_dest.count(k.deadline) == 1));
    }
}
