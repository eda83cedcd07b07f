#ifndef SNDRR_DDD_HPP
#define SNDRR_DDD_HPP

#include <string>
#include <vector>

#include "sndrr/arc_partition.hpp"
#include "sndrr/instance.hpp"
#include "sndrr/lp.hpp"
#include "sndrr/time_expansion.hpp"

namespace sndrr {

enum class DddMethod { node, arc, direct };
enum class PartitionSource { finest, hubspoke, trivial };

DddMethod parse_method(const std::string& name);
PartitionSource parse_partition(const std::string& name);
const char* to_string(DddMethod method);
const char* to_string(PartitionSource source);

struct DddConfig {
    DddMethod method = DddMethod::node;
    double gap = 0.01;
    double time_limit_seconds = 3600.0;
    PartitionSource partition = PartitionSource::finest;
    std::string backend;  // empty selects the default backend
};

struct IterationStats {
    int iteration = 0;
    double lower_bound = 0.0;  // best bound proven so far (nondecreasing)
    double model_bound = 0.0;  // this iterate's solver bound
    double upper_bound = 0.0;  // best feasible cost so far
    long var_count = 0;
    long constraint_count = 0;
    long timed_node_count = 0;
    int infeasible_count = 0;
    int nodes_added = 0;
    bool safeguard_used = false;
    double wall_seconds = 0.0;
};

struct DddResult {
    SolveStatus status = SolveStatus::error;
    std::string method;
    double objective = 0.0;    // best feasible full-network cost
    double lower_bound = 0.0;  // final proven lower bound
    double gap = 0.0;
    std::vector<Trajectory> trajectories;  // feasible in the full network
    std::vector<IterationStats> trace;
    int iterations = 0;
    long final_vars = 0;
    long final_cons = 0;
    int safeguard_events = 0;
    double wall_seconds = 0.0;
};

// Node-based iterative refinement: solve the flat partial-network program,
// convert via the departure-time program, lengthen the earliest short arc of
// each infeasible trajectory.
DddResult solve_node_based(const Instance& instance, const DddConfig& config);

// Arc-based refinement on the auxiliary network built from the configured
// partition; timed nodes are added per arc part instead of per node.
DddResult solve_arc_based(const Instance& instance, const DddConfig& config);

// Single solve of the full time-indexed program; the ground-truth baseline.
DddResult solve_direct(const Instance& instance, const DddConfig& config);

DddResult solve_with_method(const Instance& instance, const DddConfig& config);

// Partition per the configured source, validated for the instance.
ArcPartition make_partition(const Instance& instance, PartitionSource source);

}  // namespace sndrr

#endif  // SNDRR_DDD_HPP
