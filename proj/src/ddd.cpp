#include "sndrr/ddd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "sndrr/backend.hpp"
#include "sndrr/mip_models.hpp"
#include "sndrr/upper_bound.hpp"

namespace sndrr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool gap_reached(double upper, double lower, double gap) {
    const double scale = std::max(1.0, std::abs(upper));
    return upper - lower <= gap * scale + 1e-9 * scale;
}

SolveStatus final_status(double upper, double lower) {
    const double scale = std::max(1.0, std::abs(upper));
    return upper - lower <= 1e-7 * scale ? SolveStatus::optimal : SolveStatus::within_gap;
}

// Candidate timed node that lengthens the earliest-departing short arc of a
// trajectory; nullopt when the trajectory has no short arc.
std::optional<std::pair<NodeId, int>> earliest_short_candidate(const Trajectory& trajectory,
                                                               const FlatNetwork& network) {
    const TimedArc* earliest = nullptr;
    for (const TimedArc& arc : trajectory.arcs) {
        if (arc.kind != TimedArcKind::movement || !is_short(arc, network)) continue;
        if (earliest == nullptr || arc.tail.time < earliest->tail.time) earliest = &arc;
    }
    if (earliest == nullptr) return std::nullopt;
    const int lengthened = earliest->tail.time + network.arc(earliest->flat_arc).transit;
    return std::make_pair(earliest->head.node, lengthened);
}

// All short-arc candidates of a trajectory in departure order (safeguard).
std::vector<std::pair<NodeId, int>> short_candidates(const Trajectory& trajectory,
                                                     const FlatNetwork& network) {
    std::vector<const TimedArc*> shorts;
    for (const TimedArc& arc : trajectory.arcs) {
        if (arc.kind == TimedArcKind::movement && is_short(arc, network)) shorts.push_back(&arc);
    }
    std::stable_sort(shorts.begin(), shorts.end(),
                     [](const TimedArc* a, const TimedArc* b) { return a->tail.time < b->tail.time; });
    std::vector<std::pair<NodeId, int>> result;
    for (const TimedArc* arc : shorts) {
        result.emplace_back(arc->head.node, arc->tail.time + network.arc(arc->flat_arc).transit);
    }
    return result;
}

struct RefinementOutcome {
    int nodes_added = 0;
    bool safeguard_used = false;
};

// Lengthen the earliest short arc of each infeasible trajectory; coincident
// additions are deduplicated. The safeguard walks later short arcs if a
// round would otherwise add nothing.
RefinementOutcome refine_network(PartialNetwork& network, const std::vector<int>& infeasible,
                                 const std::vector<Trajectory>& trajectories) {
    RefinementOutcome outcome;
    std::set<std::pair<NodeId, int>> additions;
    for (int k : infeasible) {
        const auto candidate =
            earliest_short_candidate(trajectories[static_cast<std::size_t>(k)], network.network());
        if (!candidate) {
            throw std::logic_error("infeasible trajectory without a short arc");
        }
        if (!network.has_time(candidate->first, candidate->second)) additions.insert(*candidate);
    }
    if (additions.empty() && !infeasible.empty()) {
        for (int k : infeasible) {
            for (const auto& candidate :
                 short_candidates(trajectories[static_cast<std::size_t>(k)], network.network())) {
                if (!network.has_time(candidate.first, candidate.second)) {
                    additions.insert(candidate);
                    outcome.safeguard_used = true;
                    break;
                }
            }
            if (!additions.empty()) break;
        }
        if (additions.empty()) {
            throw std::logic_error("refinement round cannot make progress");
        }
    }
    for (const auto& [node, time] : additions) network.refine(node, time);
    outcome.nodes_added = static_cast<int>(additions.size());
    return outcome;
}

}  // namespace

DddMethod parse_method(const std::string& name) {
    if (name == "node") return DddMethod::node;
    if (name == "arc") return DddMethod::arc;
    if (name == "direct") return DddMethod::direct;
    throw std::invalid_argument("unknown method: " + name);
}

PartitionSource parse_partition(const std::string& name) {
    if (name == "finest") return PartitionSource::finest;
    if (name == "hubspoke") return PartitionSource::hubspoke;
    if (name == "trivial") return PartitionSource::trivial;
    throw std::invalid_argument("unknown partition source: " + name);
}

const char* to_string(DddMethod method) {
    switch (method) {
        case DddMethod::node: return "node";
        case DddMethod::arc: return "arc";
        case DddMethod::direct: return "direct";
    }
    return "?";
}

const char* to_string(PartitionSource source) {
    switch (source) {
        case PartitionSource::finest: return "finest";
        case PartitionSource::hubspoke: return "hubspoke";
        case PartitionSource::trivial: return "trivial";
    }
    return "?";
}

ArcPartition make_partition(const Instance& instance, PartitionSource source) {
    ArcPartition partition;
    switch (source) {
        case PartitionSource::finest: partition = finest_valid_partition(instance); break;
        case PartitionSource::hubspoke: partition = hub_spoke_partition(instance); break;
        case PartitionSource::trivial: partition = trivial_partition(instance.network); break;
    }
    if (!partition.valid_for(instance)) {
        throw std::invalid_argument("arc partition is not valid for this instance");
    }
    return partition;
}

DddResult solve_direct(const Instance& raw, const DddConfig& config) {
    const auto start = Clock::now();
    const Instance instance = preprocess(raw);
    const auto backend = make_backend(config.backend);

    const SndModel model = build_full_model(instance);
    MipOptions options;
    options.relative_gap = config.gap;
    options.time_limit_seconds = config.time_limit_seconds;
    const MipResult mip = backend->solve(model.lp, options);

    DddResult result;
    result.method = "direct";
    result.iterations = 1;
    result.final_vars = model.num_vars();
    result.final_cons = model.num_constraints();
    result.lower_bound = mip.best_bound;
    if (mip.status == SolveStatus::infeasible || mip.status == SolveStatus::unbounded) {
        throw std::runtime_error("full model unexpectedly " +
                                 std::string(to_string(mip.status)));
    }
    if (!mip.x.empty()) {
        result.trajectories = extract_trajectories(model, instance, mip.x);
        result.objective = reprice_trajectories(model, instance, result.trajectories);
    }
    result.status = mip.status == SolveStatus::time_limit
                        ? SolveStatus::time_limit
                        : final_status(result.objective, result.lower_bound);
    result.gap = std::max(0.0, (result.objective - result.lower_bound) /
                                   std::max(1.0, std::abs(result.objective)));
    result.wall_seconds = seconds_since(start);
    result.trace.push_back({1, result.lower_bound, result.lower_bound, result.objective,
                            result.final_vars, result.final_cons, 0, 0, 0, false,
                            result.wall_seconds});
    return result;
}

namespace {

// Shared driver skeleton for the two refinement methods. The callbacks build
// the iterate's model, extract trajectories, produce the departure-time
// input, and name the network being refined.
template <typename BuildIterate>
DddResult run_refinement_loop(const Instance& instance, const DddConfig& config,
                              const char* method_name, long iteration_cap,
                              PartialNetwork& network, BuildIterate&& build_iterate) {
    const auto start = Clock::now();
    const auto backend = make_backend(config.backend);

    DddResult result;
    result.method = method_name;
    double best_lb = -kInfinity;
    double best_ub = kInfinity;

    for (int iteration = 1;; ++iteration) {
        if (iteration > iteration_cap) {
            throw std::logic_error("iteration bound exceeded — termination invariant breached");
        }
        auto [model, ub_input_fn] = build_iterate(network);

        const double remaining = config.time_limit_seconds - seconds_since(start);
        if (remaining <= 0.0) {
            result.status = SolveStatus::time_limit;
            break;
        }
        MipOptions options;
        options.relative_gap = config.gap;
        options.time_limit_seconds = remaining;
        const MipResult mip = backend->solve(model.lp, options);
        if (mip.status == SolveStatus::infeasible || mip.status == SolveStatus::unbounded) {
            throw std::runtime_error("lower-bound model unexpectedly " +
                                     std::string(to_string(mip.status)));
        }
        best_lb = std::max(best_lb, mip.best_bound);
        if (mip.status == SolveStatus::time_limit) {
            result.status = SolveStatus::time_limit;
            break;
        }

        const std::vector<Trajectory> trajectories =
            extract_trajectories(model, instance, mip.x);
        const UBInput ub_input = ub_input_fn(trajectories);
        const UBResult ub = build_and_solve_lp_ub(instance, ub_input, *backend);
        if (ub.objective < best_ub) {
            best_ub = ub.objective;
            result.trajectories = ub.trajectories;
        }

        IterationStats stats;
        stats.iteration = iteration;
        stats.lower_bound = best_lb;
        stats.model_bound = mip.best_bound;
        stats.upper_bound = best_ub;
        stats.var_count = model.num_vars();
        stats.constraint_count = model.num_constraints();
        stats.timed_node_count = network.num_timed_nodes();
        stats.infeasible_count = static_cast<int>(ub.infeasible.size());
        result.final_vars = model.num_vars();
        result.final_cons = model.num_constraints();

        if (gap_reached(best_ub, best_lb, config.gap)) {
            stats.wall_seconds = seconds_since(start);
            result.trace.push_back(stats);
            result.iterations = iteration;
            result.status = final_status(best_ub, best_lb);
            break;
        }

        const RefinementOutcome outcome = refine_network(network, ub.infeasible, trajectories);
        stats.nodes_added = outcome.nodes_added;
        stats.safeguard_used = outcome.safeguard_used;
        if (outcome.safeguard_used) ++result.safeguard_events;
        stats.wall_seconds = seconds_since(start);
        result.trace.push_back(stats);
        result.iterations = iteration;
    }

    result.objective = best_ub;
    result.lower_bound = best_lb;
    result.gap = std::isfinite(best_ub)
                     ? std::max(0.0, (best_ub - best_lb) / std::max(1.0, std::abs(best_ub)))
                     : kInfinity;
    result.wall_seconds = seconds_since(start);
    return result;
}

}  // namespace

DddResult solve_node_based(const Instance& raw, const DddConfig& config) {
    const Instance instance = preprocess(raw);
    PartialNetwork network = PartialNetwork::build(instance.network, instance.horizon,
                                                   initial_timed_nodes(instance));
    const long cap = static_cast<long>(instance.network.num_nodes()) * instance.horizon + 1;

    auto build_iterate = [&instance](const PartialNetwork& net) {
        SndModel model = build_partial_model(instance, net);
        auto input_fn = [&instance, &net](const std::vector<Trajectory>& trajectories) {
            return ub_input_node_based(instance, net, trajectories);
        };
        return std::make_pair(std::move(model), input_fn);
    };
    return run_refinement_loop(instance, config, "node", cap, network, build_iterate);
}

DddResult solve_arc_based(const Instance& raw, const DddConfig& config) {
    const Instance instance = preprocess(raw);
    const ArcPartition partition = make_partition(instance, config.partition);
    const AuxGraph aux(instance.network, partition);
    std::vector<AuxCommodity> mapped;
    for (std::size_t ki = 0; ki < instance.commodities.size(); ++ki) {
        mapped.push_back(map_commodity_subgraph(aux, instance, static_cast<int>(ki)));
    }
    PartialNetwork network = PartialNetwork::build(aux.graph(), instance.horizon,
                                                   initial_aux_timed_nodes(aux, instance, mapped));
    const long cap = static_cast<long>(aux.num_aux_nodes()) * instance.horizon + 1;

    auto build_iterate = [&instance, &aux, &mapped](const PartialNetwork& net) {
        const PartialNetwork projection = project_to_flat(aux, net);
        const ConsolidationClasses classes = compute_consolidation_classes(aux, net);
        SndModel model = build_aux_partial_model(instance, aux, net, projection, classes, mapped);
        auto input_fn = [&instance, &aux](const std::vector<Trajectory>& trajectories) {
            return ub_input_arc_based(instance, aux, trajectories);
        };
        return std::make_pair(std::move(model), input_fn);
    };
    return run_refinement_loop(instance, config, "arc", cap, network, build_iterate);
}

DddResult solve_with_method(const Instance& instance, const DddConfig& config) {
    switch (config.method) {
        case DddMethod::node: return solve_node_based(instance, config);
        case DddMethod::arc: return solve_arc_based(instance, config);
        case DddMethod::direct: return solve_direct(instance, config);
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace sndrr
