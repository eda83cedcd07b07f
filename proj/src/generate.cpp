#include "sndrr/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sndrr/arc_partition.hpp"
#include "sndrr/rng.hpp"

namespace sndrr {

namespace {

constexpr int kMaxCommodityRetries = 1000;
constexpr double kRatioTolerance = 0.01;

double total_demand(const Instance& instance) {
    double q = 0.0;
    for (const Commodity& k : instance.commodities) q += k.demand;
    return q;
}

void check_ratios(const Instance& instance, double cost_ratio, double capacity_ratio) {
    const double measured_c = measured_capacity_ratio(instance);
    if (std::abs(measured_c / capacity_ratio - 1.0) > kRatioTolerance) {
        std::ostringstream text;
        text << "capacity ratio unreachable after integer rounding: target " << capacity_ratio
             << ", measured " << measured_c;
        throw std::runtime_error(text.str());
    }
    const double measured_f = measured_cost_ratio(instance);
    if (std::abs(measured_f / cost_ratio - 1.0) > kRatioTolerance) {
        std::ostringstream text;
        text << "cost ratio off target: target " << cost_ratio << ", measured " << measured_f;
        throw std::runtime_error(text.str());
    }
}

}  // namespace

double measured_cost_ratio(const Instance& instance) {
    double sum_f = 0.0;
    double sum_c = 0.0;
    for (const Arc& arc : instance.network.arcs()) {
        sum_f += arc.fixed_cost;
        sum_c += arc.var_cost;
    }
    const double num_k = static_cast<double>(instance.commodities.size());
    return num_k * sum_f / (total_demand(instance) * num_k * sum_c);
}

double measured_capacity_ratio(const Instance& instance) {
    double sum_u = 0.0;
    for (const Arc& arc : instance.network.arcs()) sum_u += arc.capacity;
    return static_cast<double>(instance.network.num_arcs()) * total_demand(instance) / sum_u;
}

Instance generate_crainic_flat(const CrainicParams& params) {
    if (params.nodes < 2) throw std::invalid_argument("need at least two nodes");
    if (params.arcs < 1 || params.arcs > params.nodes * (params.nodes - 1)) {
        throw std::invalid_argument("arc count out of range");
    }
    if (params.commodities < 1) throw std::invalid_argument("need at least one commodity");
    Rng rng(params.seed);

    // Uniform arc sample without replacement over all ordered pairs.
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId v = 0; v < params.nodes; ++v) {
        for (NodeId w = 0; w < params.nodes; ++w) {
            if (v != w) pairs.emplace_back(v, w);
        }
    }
    rng.shuffle(pairs);
    pairs.resize(static_cast<std::size_t>(params.arcs));
    std::sort(pairs.begin(), pairs.end());

    std::vector<Arc> arcs;
    for (const auto& [v, w] : pairs) {
        Arc arc;
        arc.tail = v;
        arc.head = w;
        arc.transit = 1;  // placeholder until timed attributes are generated
        arc.fixed_cost = rng.uniform_real(1.0, 100.0);
        arc.capacity = 1;
        arc.var_cost = rng.uniform_real(1.0, 100.0);
        arcs.push_back(arc);
    }
    // Raw capacities, kept real until the rescale.
    std::vector<double> raw_capacity;
    for (int i = 0; i < params.arcs; ++i) raw_capacity.push_back(rng.uniform_real(1.0, 100.0));

    Instance instance;
    instance.network = FlatNetwork(params.nodes, arcs);

    std::vector<double> demands;
    for (int i = 0; i < params.commodities; ++i) demands.push_back(rng.uniform_real(1.0, 100.0));

    const std::vector<ArcId> all_arcs = full_arc_set(instance.network);
    for (int i = 0; i < params.commodities; ++i) {
        NodeId origin = -1;
        NodeId dest = -1;
        bool found = false;
        for (int attempt = 0; attempt < kMaxCommodityRetries; ++attempt) {
            origin = rng.uniform_int(0, params.nodes - 1);
            dest = rng.uniform_int(0, params.nodes - 1);
            if (origin == dest) continue;
            if (shortest_transit(instance.network, all_arcs, origin, dest) >= 0) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::runtime_error("no connected origin-destination pair found within retry budget");
        }
        Commodity k;
        k.id = i;
        k.origin = origin;
        k.dest = dest;
        k.demand = demands[static_cast<std::size_t>(i)];
        k.release = 0;
        k.subgraph = all_arcs;
        instance.commodities.push_back(std::move(k));
    }

    // Placeholder deadlines: the shortest feasible window per commodity.
    int horizon = 1;
    for (Commodity& k : instance.commodities) {
        k.deadline = std::max(1, shortest_transit(instance.network, k.subgraph, k.origin, k.dest));
        horizon = std::max(horizon, k.deadline);
    }
    instance.horizon = horizon;

    // Rescale capacities then fixed costs onto the ratios.
    std::vector<Arc> work = instance.network.arcs();
    double sum_u_raw = 0.0;
    for (double u : raw_capacity) sum_u_raw += u;
    const double q_total = total_demand(instance);
    const double u_scale =
        static_cast<double>(work.size()) * q_total / (params.capacity_ratio * sum_u_raw);
    double sum_f = 0.0;
    double sum_c = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        work[i].capacity = std::max(1, round_half_away(raw_capacity[i] * u_scale));
        sum_f += work[i].fixed_cost;
        sum_c += work[i].var_cost;
    }
    const double f_scale = params.cost_ratio * q_total * sum_c / sum_f;
    for (Arc& arc : work) arc.fixed_cost *= f_scale;
    instance.network = FlatNetwork(params.nodes, std::move(work));

    check_ratios(instance, params.cost_ratio, params.capacity_ratio);
    return instance;
}

Instance assign_transit_times(Instance instance, int tau_max) {
    double max_f = 0.0;
    for (const Arc& arc : instance.network.arcs()) max_f = std::max(max_f, arc.fixed_cost);
    std::vector<Arc> arcs = instance.network.arcs();
    for (Arc& arc : arcs) {
        arc.transit = std::max(1, round_half_away(arc.fixed_cost * tau_max / max_f));
    }
    instance.network = FlatNetwork(instance.network.num_nodes(), std::move(arcs));
    return instance;
}

double mean_shortest_transit(const Instance& instance) {
    double mean = 0.0;
    for (const Commodity& k : instance.commodities) {
        const int sp = shortest_transit(instance.network, k.subgraph, k.origin, k.dest);
        if (sp < 0) throw std::runtime_error("commodity has no feasible path");
        mean += sp;
    }
    return mean / static_cast<double>(instance.commodities.size());
}

Instance generate_timed_attributes(Instance instance, double sigma_r, double mu_p,
                                   std::uint64_t seed, bool keep_transit, int tau_max) {
    Rng rng(seed);
    if (!keep_transit) instance = assign_transit_times(std::move(instance), tau_max);

    // Average shortest commodity transit.
    std::vector<int> shortest(instance.commodities.size());
    double mean_transit = 0.0;
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        const Commodity& k = instance.commodities[i];
        const int sp = shortest_transit(instance.network, k.subgraph, k.origin, k.dest);
        if (sp < 0) throw std::runtime_error("commodity became infeasible while timing attributes");
        shortest[i] = sp;
        mean_transit += sp;
    }
    mean_transit /= static_cast<double>(instance.commodities.size());

    std::vector<int> releases;
    int min_release = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        const int r = std::max(0, round_half_away(rng.normal(mean_transit, sigma_r)));
        releases.push_back(r);
        min_release = std::min(min_release, r);
    }
    int horizon = 1;
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
        Commodity& k = instance.commodities[i];
        k.release = releases[i] - min_release;
        const double flexibility = rng.normal(mu_p, mu_p / 6.0);
        int deadline = k.release + round_half_away(mean_transit + flexibility);
        deadline = std::max(deadline, k.release + shortest[i]);
        k.deadline = deadline;
        horizon = std::max(horizon, deadline);
    }
    instance.horizon = horizon;
    return instance;
}

Instance generate_timed_attributes_scaled(Instance instance, double sigma_factor,
                                          double mu_factor, std::uint64_t seed,
                                          bool keep_transit, int tau_max) {
    if (!keep_transit) instance = assign_transit_times(std::move(instance), tau_max);
    const double mean = mean_shortest_transit(instance);
    return generate_timed_attributes(std::move(instance), sigma_factor * mean, mu_factor * mean,
                                     seed, /*keep_transit=*/true, tau_max);
}

Instance assign_designated_paths(Instance instance) {
    const FlatNetwork& net = instance.network;
    for (Commodity& k : instance.commodities) {
        const std::vector<NodeId> path = lex_shortest_path(net, k.subgraph, k.origin, k.dest);
        if (path.empty()) {
            std::ostringstream text;
            text << "commodity " << k.id << " infeasible: no path for designated assignment";
            throw std::runtime_error(text.str());
        }
        std::vector<ArcId> arcs;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            arcs.push_back(*net.find_arc(path[i], path[i + 1]));
        }
        std::sort(arcs.begin(), arcs.end());
        k.subgraph = std::move(arcs);
    }
    return instance;
}

Instance generate_hub_spoke_flat(const HubSpokeParams& params) {
    if (params.hubs < 1 || params.hubs > params.nodes) throw std::invalid_argument("hub count out of range");
    if (params.arcs < params.hubs * (params.hubs - 1)) {
        throw std::invalid_argument("arc budget below the mandatory hub-hub arcs");
    }
    if (params.grid * params.grid < params.nodes) throw std::invalid_argument("grid too small");
    if (params.commodities < 1) throw std::invalid_argument("need at least one commodity");
    Rng rng(params.seed);

    // Distinct grid points.
    const std::vector<int> cells =
        rng.sample_without_replacement(params.grid * params.grid, params.nodes);
    std::vector<std::pair<int, int>> points;
    for (int c : cells) points.emplace_back(c % params.grid, c / params.grid);

    std::vector<int> hub_ids = rng.sample_without_replacement(params.nodes, params.hubs);
    std::sort(hub_ids.begin(), hub_ids.end());

    HubLayout layout;
    layout.hubs.assign(hub_ids.begin(), hub_ids.end());
    layout.region.resize(static_cast<std::size_t>(params.nodes));
    const auto l1 = [&points](int a, int b) {
        return std::abs(points[static_cast<std::size_t>(a)].first -
                        points[static_cast<std::size_t>(b)].first) +
               std::abs(points[static_cast<std::size_t>(a)].second -
                        points[static_cast<std::size_t>(b)].second);
    };
    for (NodeId v = 0; v < params.nodes; ++v) {
        int best_region = 0;
        int best_dist = l1(v, layout.hubs[0]);
        for (std::size_t h = 1; h < layout.hubs.size(); ++h) {
            const int dist = l1(v, layout.hubs[h]);
            if (dist < best_dist) {  // ties stay with the lower hub id
                best_dist = dist;
                best_region = static_cast<int>(h);
            }
        }
        layout.region[static_cast<std::size_t>(v)] = best_region;
    }

    // All hub-hub arcs, then a uniform sample of within-region ordered pairs.
    std::set<std::pair<NodeId, NodeId>> chosen;
    for (NodeId a : layout.hubs) {
        for (NodeId b : layout.hubs) {
            if (a != b) chosen.insert({a, b});
        }
    }
    std::vector<std::pair<NodeId, NodeId>> regional_pool;
    for (NodeId v = 0; v < params.nodes; ++v) {
        for (NodeId w = 0; w < params.nodes; ++w) {
            if (v == w) continue;
            if (layout.region[static_cast<std::size_t>(v)] !=
                layout.region[static_cast<std::size_t>(w)]) {
                continue;
            }
            if (chosen.count({v, w})) continue;
            regional_pool.emplace_back(v, w);
        }
    }
    const int wanted_regional = params.arcs - static_cast<int>(chosen.size());
    if (wanted_regional > static_cast<int>(regional_pool.size())) {
        throw std::runtime_error("region structure admits too few within-region arcs for the request");
    }
    rng.shuffle(regional_pool);
    for (int i = 0; i < wanted_regional; ++i) chosen.insert(regional_pool[static_cast<std::size_t>(i)]);

    std::vector<Arc> arcs;
    for (const auto& [v, w] : chosen) {
        Arc arc;
        arc.tail = v;
        arc.head = w;
        arc.transit = std::max(1, l1(v, w));
        arc.fixed_cost = rng.uniform_real(1.0, 100.0);
        arc.capacity = 1;
        arc.var_cost = rng.uniform_real(1.0, 100.0);
        arcs.push_back(arc);
    }
    std::vector<double> raw_capacity;
    for (std::size_t i = 0; i < arcs.size(); ++i) raw_capacity.push_back(rng.uniform_real(1.0, 100.0));

    Instance instance;
    instance.network = FlatNetwork(params.nodes, arcs);
    instance.hub_layout = layout;

    std::vector<double> demands;
    for (int i = 0; i < params.commodities; ++i) demands.push_back(rng.uniform_real(1.0, 100.0));

    for (int i = 0; i < params.commodities; ++i) {
        bool found = false;
        Commodity k;
        k.id = i;
        k.demand = demands[static_cast<std::size_t>(i)];
        k.release = 0;
        for (int attempt = 0; attempt < kMaxCommodityRetries; ++attempt) {
            const NodeId origin = rng.uniform_int(0, params.nodes - 1);
            const NodeId dest = rng.uniform_int(0, params.nodes - 1);
            if (origin == dest) continue;
            std::vector<ArcId> sub = hub_spoke_arcs(instance.network, layout, origin, dest);
            if (shortest_transit(instance.network, sub, origin, dest) < 0) continue;
            k.origin = origin;
            k.dest = dest;
            k.subgraph = std::move(sub);
            found = true;
            break;
        }
        if (!found) {
            throw std::runtime_error("region structure admits no feasible commodity within retry budget");
        }
        instance.commodities.push_back(std::move(k));
    }

    int horizon = 1;
    for (Commodity& k : instance.commodities) {
        k.deadline = std::max(1, shortest_transit(instance.network, k.subgraph, k.origin, k.dest));
        horizon = std::max(horizon, k.deadline);
    }
    instance.horizon = horizon;

    // Rescale capacities then fixed costs onto the ratios.
    std::vector<Arc> work = instance.network.arcs();
    double sum_u_raw = 0.0;
    for (double u : raw_capacity) sum_u_raw += u;
    const double q_total = total_demand(instance);
    const double u_scale =
        static_cast<double>(work.size()) * q_total / (params.capacity_ratio * sum_u_raw);
    double sum_f = 0.0;
    double sum_c = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        work[i].capacity = std::max(1, round_half_away(raw_capacity[i] * u_scale));
        sum_f += work[i].fixed_cost;
        sum_c += work[i].var_cost;
    }
    const double f_scale = params.cost_ratio * q_total * sum_c / sum_f;
    for (Arc& arc : work) arc.fixed_cost *= f_scale;
    instance.network = FlatNetwork(params.nodes, std::move(work));

    check_ratios(instance, params.cost_ratio, params.capacity_ratio);
    return instance;
}

Instance apply_critical_times(Instance instance, int alpha, std::uint64_t seed) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    Rng rng(seed);
    const int horizon = instance.horizon;

    // One critical time per node per interval of the evenly split horizon.
    std::vector<std::vector<int>> critical(static_cast<std::size_t>(instance.network.num_nodes()));
    for (NodeId v = 0; v < instance.network.num_nodes(); ++v) {
        for (int i = 0; i < alpha; ++i) {
            const int lo = static_cast<int>((static_cast<long long>(i) * horizon) / alpha);
            int hi = static_cast<int>((static_cast<long long>(i + 1) * horizon) / alpha) - 1;
            if (i == alpha - 1) hi = horizon;
            if (hi < lo) hi = lo;
            critical[static_cast<std::size_t>(v)].push_back(rng.uniform_int(lo, hi));
        }
        auto& set = critical[static_cast<std::size_t>(v)];
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }

    for (Commodity& k : instance.commodities) {
        const auto& at_origin = critical[static_cast<std::size_t>(k.origin)];
        auto down = std::upper_bound(at_origin.begin(), at_origin.end(), k.release);
        k.release = down == at_origin.begin() ? 0 : *std::prev(down);

        const auto& at_dest = critical[static_cast<std::size_t>(k.dest)];
        auto up = std::lower_bound(at_dest.begin(), at_dest.end(), k.deadline);
        k.deadline = up == at_dest.end() ? horizon : *up;
    }
    // Rounding only widens windows, so feasibility and the horizon persist;
    // verify rather than assume.
    const auto violations = validate(instance);
    if (!violations.empty()) {
        throw std::logic_error("critical-time transform broke instance validity: " + violations.front());
    }
    return instance;
}

}  // namespace sndrr
