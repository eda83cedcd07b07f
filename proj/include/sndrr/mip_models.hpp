#ifndef SNDRR_MIP_MODELS_HPP
#define SNDRR_MIP_MODELS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sndrr/arc_partition.hpp"
#include "sndrr/instance.hpp"
#include "sndrr/lp.hpp"
#include "sndrr/time_expansion.hpp"

namespace sndrr {

enum class ModelKind { full_flat, partial_flat, full_aux, partial_aux };

// One commodity flow variable: a movement copy (arc >= 0, in the network the
// model was built on) or a holdover copy (arc == -1, node/time coordinates).
struct FlowVarInfo {
    int commodity = -1;
    int arc = -1;
    NodeId tail_node = -1;
    int tail_time = 0;
    NodeId head_node = -1;
    int head_time = 0;
};

// Truck-count variable on a flat timed movement arc.
struct TruckVarInfo {
    ArcId flat_arc = -1;
    int tail_time = 0;
    int head_time = 0;
};

// Backend-neutral formulation plus the bookkeeping needed to read solutions
// back as trajectories. Flow columns come first, truck columns after.
struct SndModel {
    ModelKind kind = ModelKind::full_flat;
    LinearProgram lp;
    std::vector<FlowVarInfo> flow_vars;
    std::vector<TruckVarInfo> truck_vars;
    int balance_rows = 0;
    int capacity_rows = 0;
    int budget_rows = 0;
    std::vector<TimedNode> sources;  // per commodity, in the model's network
    std::vector<TimedNode> sinks;
    const AuxGraph* aux = nullptr;  // aux models only

    int num_vars() const { return lp.num_cols(); }
    int num_constraints() const { return lp.num_rows(); }
    int truck_col(int i) const { return static_cast<int>(flow_vars.size()) + i; }
    long movement_flow_vars() const;

    std::vector<std::string> column_names() const;
    std::vector<std::string> row_names() const;
    void write_lp(std::ostream& out) const;
};

// Time-indexed program on the fully expanded flat network (no transit-budget
// rows, matching the full formulation).
SndModel build_full_model(const Instance& instance);

// Program on a flat partial network: same families plus one transit-budget
// row per commodity, using true transit times.
SndModel build_partial_model(const Instance& instance, const PartialNetwork& partial);

// Program on the fully expanded auxiliary network; capacity rows sum each
// consolidation class. Variable/constraint counts match build_full_model.
SndModel build_full_aux_model(const Instance& instance, const AuxGraph& aux);

// Program on an aux partial network. Truck variables live on the projected
// flat partial network; capacity rows sum the consolidation classes; one
// transit-budget row per commodity.
SndModel build_aux_partial_model(const Instance& instance, const AuxGraph& aux,
                                 const PartialNetwork& aux_partial,
                                 const PartialNetwork& projection,
                                 const ConsolidationClasses& classes,
                                 const std::vector<AuxCommodity>& mapped);

// Follows unit flows from source to sink; trajectories are over the model's
// own network (aux node/arc ids for aux models). Throws on fractional or
// disconnected flow (a solver tolerance breach, not a user error).
std::vector<Trajectory> extract_trajectories(const SndModel& model, const Instance& instance,
                                             const std::vector<double>& solution);

// Exact cost of a set of trajectories: variable cost plus ceil(load/capacity)
// trucks per used flat timed arc (aux arcs consolidate by flat arc and
// departure time).
double reprice_trajectories(const SndModel& model, const Instance& instance,
                            const std::vector<Trajectory>& trajectories);

// Same pricing for trajectories already expressed on the flat network.
double price_flat_trajectories(const Instance& instance,
                               const std::vector<Trajectory>& trajectories);

}  // namespace sndrr

#endif  // SNDRR_MIP_MODELS_HPP
