#include "sndrr/upper_bound.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sndrr/mip_models.hpp"

namespace sndrr {

namespace {

constexpr double kDeltaTol = 1e-6;

void canonicalize(UBPair& pair) {
    if (pair.k2 < pair.k1) {
        std::swap(pair.k1, pair.k2);
        std::swap(pair.pos1, pair.pos2);
    }
}

UBInput finish_input(const Instance& instance, const std::vector<std::vector<NodeId>>& paths,
                     const std::vector<std::vector<int>>& departures,
                     const std::vector<char>& exact,
                     std::map<ArcId, std::set<UBPair>>& pair_sets) {
    UBInput input;
    input.paths = paths;
    input.fixed = exact;
    input.fixed_times.resize(instance.commodities.size());
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        if (exact[ki]) input.fixed_times[ki] = departures[ki];
    }
    for (auto& [arc, pairs] : pair_sets) {
        input.consolidations[arc] = {pairs.begin(), pairs.end()};
    }
    return input;
}

}  // namespace

UBInput ub_input_node_based(const Instance& instance, const PartialNetwork& partial,
                            const std::vector<Trajectory>& trajectories) {
    const FlatNetwork& net = instance.network;
    std::vector<std::vector<NodeId>> paths(instance.commodities.size());
    std::vector<std::vector<int>> departures(instance.commodities.size());
    std::vector<char> exact(instance.commodities.size(), 1);
    // Shared timed copies: (flat arc, departure) -> (commodity, position).
    std::map<std::pair<ArcId, int>, std::vector<std::pair<int, int>>> sharers;

    for (const Trajectory& trajectory : trajectories) {
        const std::size_t ki = static_cast<std::size_t>(trajectory.commodity);
        paths[ki] = trajectory.flat_path();
        int pos = 0;
        for (const TimedArc& arc : trajectory.movement_arcs()) {
            departures[ki].push_back(arc.tail.time);
            if (is_short(arc, net)) exact[ki] = 0;
            sharers[{arc.flat_arc, arc.tail.time}].emplace_back(trajectory.commodity, pos);
            ++pos;
        }
    }

    std::map<ArcId, std::set<UBPair>> pair_sets;
    for (const auto& [key, members] : sharers) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (members[i].first == members[j].first) continue;
                UBPair pair{members[i].first, members[i].second, members[j].first, members[j].second};
                canonicalize(pair);
                pair_sets[key.first].insert(pair);
            }
        }
    }
    return finish_input(instance, paths, departures, exact, pair_sets);
}

UBInput ub_input_arc_based(const Instance& instance, const AuxGraph& aux,
                           const std::vector<Trajectory>& aux_trajectories) {
    std::vector<std::vector<NodeId>> paths(instance.commodities.size());
    std::vector<std::vector<int>> departures(instance.commodities.size());
    std::vector<char> exact(instance.commodities.size(), 1);
    // Consolidation-class members: (flat arc, departure) -> (commodity, position).
    std::map<std::pair<ArcId, int>, std::vector<std::pair<int, int>>> sharers;

    for (const Trajectory& trajectory : aux_trajectories) {
        const std::size_t ki = static_cast<std::size_t>(trajectory.commodity);
        // Project the aux path down to the flat network.
        for (const TimedArc& arc : trajectory.movement_arcs()) {
            if (paths[ki].empty()) paths[ki].push_back(aux.flat_node(arc.tail.node));
            paths[ki].push_back(aux.flat_node(arc.head.node));
        }
        int pos = 0;
        for (const TimedArc& arc : trajectory.movement_arcs()) {
            const ArcId flat_arc = aux.flat_arc(arc.flat_arc);
            departures[ki].push_back(arc.tail.time);
            if (arc.head.time != arc.tail.time + aux.flat().arc(flat_arc).transit) exact[ki] = 0;
            sharers[{flat_arc, arc.tail.time}].emplace_back(trajectory.commodity, pos);
            ++pos;
        }
    }

    std::map<ArcId, std::set<UBPair>> pair_sets;
    for (const auto& [key, members] : sharers) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (members[i].first == members[j].first) continue;
                UBPair pair{members[i].first, members[i].second, members[j].first, members[j].second};
                canonicalize(pair);
                pair_sets[key.first].insert(pair);
            }
        }
    }
    return finish_input(instance, paths, departures, exact, pair_sets);
}

UBResult build_and_solve_lp_ub(const Instance& instance, const UBInput& input,
                               SolverBackend& backend) {
    const FlatNetwork& net = instance.network;
    LinearProgram lp;

    // Departure-time columns, by commodity then path position.
    std::vector<std::vector<int>> t_col(instance.commodities.size());
    std::vector<std::vector<ArcId>> path_arcs(instance.commodities.size());
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        const auto& path = input.paths[ki];
        if (path.size() < 2) throw std::invalid_argument("LP-UB: path with fewer than two nodes");
        for (std::size_t p = 0; p + 1 < path.size(); ++p) {
            const auto arc = net.find_arc(path[p], path[p + 1]);
            if (!arc) throw std::invalid_argument("LP-UB: path is not a dipath");
            path_arcs[ki].push_back(*arc);
            double lb = 0.0;
            double ub = static_cast<double>(instance.horizon);
            if (input.fixed[ki]) {
                lb = ub = static_cast<double>(input.fixed_times[ki][p]);
            }
            t_col[ki].push_back(lp.add_col(lb, ub, 0.0));
        }
    }

    // Chaining, release, and deadline rows.
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        const Commodity& k = instance.commodities[ki];
        const auto& cols = t_col[ki];
        for (std::size_t p = 0; p + 1 < cols.size(); ++p) {
            const int transit = net.arc(path_arcs[ki][p]).transit;
            lp.add_row(-kInfinity, -static_cast<double>(transit),
                       {{cols[p], 1.0}, {cols[p + 1], -1.0}});
        }
        lp.add_row(static_cast<double>(k.release), kInfinity, {{cols.front(), 1.0}});
        const int last_transit = net.arc(path_arcs[ki].back()).transit;
        lp.add_row(-kInfinity, static_cast<double>(k.deadline - last_transit),
                   {{cols.back(), 1.0}});
    }

    // Consolidation slack columns and their coupling rows.
    struct DeltaVar {
        UBPair pair;
        int col;
    };
    std::vector<DeltaVar> deltas;
    for (const auto& [arc, pairs] : input.consolidations) {
        (void)arc;
        for (const UBPair& pair : pairs) {
            const int col = lp.add_col(0.0, kInfinity, 1.0);
            const int t1 = t_col[static_cast<std::size_t>(pair.k1)][static_cast<std::size_t>(pair.pos1)];
            const int t2 = t_col[static_cast<std::size_t>(pair.k2)][static_cast<std::size_t>(pair.pos2)];
            lp.add_row(-kInfinity, 0.0, {{t1, 1.0}, {t2, -1.0}, {col, -1.0}});
            lp.add_row(-kInfinity, 0.0, {{t2, 1.0}, {t1, -1.0}, {col, -1.0}});
            deltas.push_back({pair, col});
        }
    }

    LpResult lp_result = backend.solve_relaxation(lp);
    if (lp_result.status != SolveStatus::optimal) {
        throw std::runtime_error(
            "LP-UB infeasible: transit-budget guarantee was violated upstream");
    }

    UBResult result;
    bool integral = true;
    for (std::size_t ki = 0; ki < instance.commodities.size() && integral; ++ki) {
        for (int col : t_col[ki]) {
            const double v = lp_result.x[static_cast<std::size_t>(col)];
            if (std::abs(v - std::round(v)) > 1e-6) {
                integral = false;
                break;
            }
        }
    }
    if (!integral) {
        // Degenerate fractional vertex: re-solve with integral departures.
        for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
            for (int col : t_col[ki]) lp.integer[static_cast<std::size_t>(col)] = 1;
        }
        MipOptions options;
        const MipResult mip = backend.solve(lp, options);
        if (mip.status != SolveStatus::optimal && mip.status != SolveStatus::within_gap) {
            throw std::runtime_error("LP-UB integral fallback failed");
        }
        lp_result.x = mip.x;
        lp_result.objective = mip.objective;
        result.integer_fallback = true;
    }
    result.delta_objective = lp_result.objective;

    // Infeasible set: unfixed members of pairs with positive slack.
    std::set<int> infeasible;
    for (const DeltaVar& d : deltas) {
        if (lp_result.x[static_cast<std::size_t>(d.col)] > kDeltaTol) {
            if (!input.fixed[static_cast<std::size_t>(d.pair.k1)]) infeasible.insert(d.pair.k1);
            if (!input.fixed[static_cast<std::size_t>(d.pair.k2)]) infeasible.insert(d.pair.k2);
        }
    }
    result.infeasible = {infeasible.begin(), infeasible.end()};

    // Assemble the full-network trajectories from the chosen departures.
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        Trajectory trajectory;
        trajectory.commodity = static_cast<int>(ki);
        const auto& path = input.paths[ki];
        TimedNode at{path.front(),
                     static_cast<int>(std::llround(lp_result.x[static_cast<std::size_t>(t_col[ki][0])]))};
        for (std::size_t p = 0; p + 1 < path.size(); ++p) {
            const int depart =
                static_cast<int>(std::llround(lp_result.x[static_cast<std::size_t>(t_col[ki][p])]));
            if (depart > at.time) {
                trajectory.arcs.push_back({at, {at.node, depart}, TimedArcKind::holdover, -1});
                at.time = depart;
            }
            const ArcId a = path_arcs[ki][p];
            const int arrive = depart + net.arc(a).transit;
            trajectory.arcs.push_back({{at.node, depart}, {path[p + 1], arrive}, TimedArcKind::movement, a});
            at = {path[p + 1], arrive};
        }
        if (!trajectory_feasible(trajectory, instance)) {
            throw std::runtime_error("LP-UB produced an infeasible trajectory");
        }
        result.trajectories.push_back(std::move(trajectory));
    }
    result.objective = price_flat_trajectories(instance, result.trajectories);
    return result;
}

}  // namespace sndrr
