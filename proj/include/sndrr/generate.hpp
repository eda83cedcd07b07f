#ifndef SNDRR_GENERATE_HPP
#define SNDRR_GENERATE_HPP

#include <cstdint>

#include "sndrr/instance.hpp"

namespace sndrr {

// Flat-instance recipe: random arcs and origin-destination pairs; capacity,
// demand, fixed and variable costs drawn uniformly from [1, 100] and then
// rescaled so the cost ratio F = sum(f) / (Q * sum(c)) and the capacity
// ratio C = |A| * Q / sum(u) land within 1% of their targets.
struct CrainicParams {
    int nodes = 0;
    int arcs = 0;
    int commodities = 0;
    double cost_ratio = 0.05;      // F
    double capacity_ratio = 1.0;   // C
    std::uint64_t seed = 0;
};

Instance generate_crainic_flat(const CrainicParams& params);

// Timed attributes on top of a flat instance. Unless `keep_transit` is set,
// transit times are rescaled fixed costs: tau = max(1, round(f * tau_max /
// max f)). Release times are Normal(L, sigma_r) rounded and shifted to a
// zero minimum; deadlines are r_k + round(L + p_k) with p_k Normal(mu_p,
// mu_p / 6), clamped to keep every commodity feasible. L is the average
// shortest-path transit over commodities.
Instance generate_timed_attributes(Instance instance, double sigma_r, double mu_p,
                                   std::uint64_t seed, bool keep_transit = false,
                                   int tau_max = 10);

// Transit times alone (the rescaled-fixed-cost rule).
Instance assign_transit_times(Instance instance, int tau_max = 10);

// Average shortest commodity transit, the mean L the time parameters scale by.
double mean_shortest_transit(const Instance& instance);

// Timed attributes with sigma/mu given as fractions of L (e.g. 1/6 and 1/4):
// transits are assigned first, L computed, then the absolute recipe runs.
Instance generate_timed_attributes_scaled(Instance instance, double sigma_factor,
                                          double mu_factor, std::uint64_t seed,
                                          bool keep_transit = false, int tau_max = 10);

// Designated networks reduced to one shortest path (by transit) each; ties
// broken by the lexicographically smallest node sequence.
Instance assign_designated_paths(Instance instance);

// Geometric hub-and-spoke flat instance on an l x l grid: nodes at distinct
// grid points, regions by nearest hub (L1), all hub-hub arcs plus random
// within-region arcs, transit = L1 distance. Commodity subgraphs are the
// region-based restrictions.
struct HubSpokeParams {
    int nodes = 0;
    int hubs = 0;
    int arcs = 0;
    int commodities = 0;
    double cost_ratio = 0.05;
    double capacity_ratio = 1.0;
    int grid = 30;
    std::uint64_t seed = 0;
};

Instance generate_hub_spoke_flat(const HubSpokeParams& params);

// Release times rounded down and deadlines rounded up to per-node critical
// times, one drawn per node per interval after splitting the horizon into
// `alpha` equal intervals. Only ever widens the feasibility windows.
Instance apply_critical_times(Instance instance, int alpha, std::uint64_t seed);

// Measured ratios of an instance, recomputable from emitted data.
double measured_cost_ratio(const Instance& instance);
double measured_capacity_ratio(const Instance& instance);

}  // namespace sndrr

#endif  // SNDRR_GENERATE_HPP
