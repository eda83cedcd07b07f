#ifndef SNDRR_UPPER_BOUND_HPP
#define SNDRR_UPPER_BOUND_HPP

#include <map>
#include <vector>

#include "sndrr/arc_partition.hpp"
#include "sndrr/backend.hpp"
#include "sndrr/instance.hpp"
#include "sndrr/time_expansion.hpp"

namespace sndrr {

// A consolidated pair: commodities k1 < k2 sharing a departure on some flat
// arc, recorded with the positions of that arc inside each flat path (so the
// formulation stays well defined even when a path revisits a node).
struct UBPair {
    int k1 = -1;
    int pos1 = 0;
    int k2 = -1;
    int pos2 = 0;

    friend bool operator<(const UBPair& a, const UBPair& b) {
        return std::tie(a.k1, a.pos1, a.k2, a.pos2) < std::tie(b.k1, b.pos1, b.k2, b.pos2);
    }
    friend bool operator==(const UBPair& a, const UBPair& b) {
        return std::tie(a.k1, a.pos1, a.k2, a.pos2) == std::tie(b.k1, b.pos1, b.k2, b.pos2);
    }
};

struct UBInput {
    std::vector<std::vector<NodeId>> paths;            // flat node sequence per commodity
    std::map<ArcId, std::vector<UBPair>> consolidations;  // J, canonical and deduplicated
    std::vector<char> fixed;                            // K^F membership
    std::vector<std::vector<int>> fixed_times;          // departures per position, fixed k only
};

struct UBResult {
    double delta_objective = 0.0;
    std::vector<int> infeasible;          // C, ascending commodity ids
    std::vector<Trajectory> trajectories; // feasible for the full network
    double objective = 0.0;               // exact re-priced cost
    bool integer_fallback = false;        // LP vertex was fractional, re-solved integrally
};

// Input builder from a node-based iterate: pairs share a timed copy of an
// arc; fixed commodities are those whose trajectories use only exact-transit
// arcs.
UBInput ub_input_node_based(const Instance& instance, const PartialNetwork& partial,
                            const std::vector<Trajectory>& trajectories);

// Input builder from an arc-based iterate: pairs share a consolidation class
// (same flat arc and departure, possibly different aux copies); paths are
// projected to the flat network.
UBInput ub_input_arc_based(const Instance& instance, const AuxGraph& aux,
                           const std::vector<Trajectory>& aux_trajectories);

// Departure-time program: minimize the total consolidation slack subject to
// chaining, release, deadline, and fixed-time rows. Always feasible given the
// transit-budget rows upstream; infeasibility is reported as a contract
// breach. Returns the feasible full-network solution and the infeasible set.
UBResult build_and_solve_lp_ub(const Instance& instance, const UBInput& input,
                               SolverBackend& backend);

}  // namespace sndrr

#endif  // SNDRR_UPPER_BOUND_HPP
