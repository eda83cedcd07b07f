#ifndef SNDRR_BENCH_HPP
#define SNDRR_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sndrr/ddd.hpp"
#include "sndrr/instance.hpp"

namespace sndrr {

// One flat-parameter row of a campaign grid (hubs ignored outside the
// hub-and-spoke family).
struct GridRow {
    int nodes = 8;
    int arcs = 24;
    int commodities = 10;
    int hubs = 3;
    double cost_ratio = 0.05;
    double capacity_ratio = 1.0;
};

struct CampaignSpec {
    std::string family = "paths";  // paths | hubspoke | critical
    std::vector<GridRow> grid;     // empty selects the desk-scale default
    std::vector<DddMethod> methods = {DddMethod::node, DddMethod::arc};
    double gap = 0.01;
    double time_limit_seconds = 120.0;
    std::uint64_t seed = 1;
    int seeds_per_row = 3;
    int jobs = 0;  // 0 = hardware concurrency
    double sigma_factor = 1.0 / 6.0;  // release std-dev as a fraction of L
    double mu_factor = 1.0 / 4.0;     // flexibility mean as a fraction of L
    int alpha = 5;                    // critical-times intervals
    int tau_max = 10;
    std::optional<PartitionSource> partition;  // default depends on family
};

struct RunRecord {
    int instance_id = 0;
    std::string family;
    int nodes = 0;
    int arcs = 0;
    int commodities = 0;
    double cost_ratio = 0.0;
    double capacity_ratio = 0.0;
    std::uint64_t seed = 0;
    std::string method;
    std::string status;
    double runtime_seconds = 0.0;
    double objective = 0.0;
    double lower_bound = 0.0;
    double gap = 0.0;
    int iterations = 0;
    long final_vars = 0;
    long final_cons = 0;
    long timed_nodes = 0;
    int safeguards = 0;
};

struct CampaignReport {
    std::vector<RunRecord> rows;
};

// Desk-scale default grid for a family.
std::vector<GridRow> default_grid(const std::string& family);

// The generation pipeline for one (family, row, seed) cell.
Instance build_family_instance(const std::string& family, const GridRow& row,
                               double sigma_factor, double mu_factor, int alpha, int tau_max,
                               std::uint64_t seed);

// Runs the grid x seeds x methods matrix in a bounded worker pool; rows come
// back sorted by (instance, method). Traces can be collected for invariant
// checks by the acceptance suite.
CampaignReport run_campaign(const CampaignSpec& spec,
                            std::vector<DddResult>* collected_results = nullptr);

// Columnar text round trip (one header row).
void write_rows(const std::vector<RunRecord>& rows, std::ostream& out);
std::vector<RunRecord> read_rows(std::istream& in);

// Mean iteration/variable/constraint counts and arc/node ratios over the
// instances solved by both methods within the time limit.
struct RatioSummary {
    int co_solved = 0;
    double node_iterations = 0.0, arc_iterations = 0.0, iteration_ratio = 0.0;
    double node_vars = 0.0, arc_vars = 0.0, var_ratio = 0.0;
    double node_cons = 0.0, arc_cons = 0.0, cons_ratio = 0.0;
    double node_runtime = 0.0, arc_runtime = 0.0, runtime_ratio = 0.0;
};
RatioSummary ratio_summary(const std::vector<RunRecord>& rows);

// Decile table: per-method mean runtime and mean gap within each runtime
// decile (each method's runs sorted by runtime independently).
struct DecileRow {
    double decile = 0.0;
    std::vector<double> mean_runtime;  // aligned with `methods`
    std::vector<double> mean_gap;
};
struct DecileTable {
    std::vector<std::string> methods;
    std::vector<DecileRow> rows;
};
DecileTable decile_table(const std::vector<RunRecord>& rows);

// Solved-fraction-over-time series as plain columns (time, one per method).
struct SolvedFractionSeries {
    std::vector<std::string> methods;
    std::vector<double> times;
    std::vector<std::vector<double>> fractions;  // per method, aligned with times
};
SolvedFractionSeries solved_fraction_series(const std::vector<RunRecord>& rows);

void write_ratio_summary(const RatioSummary& summary, std::ostream& out);
void write_decile_table(const DecileTable& table, std::ostream& out);
void write_solved_fraction(const SolvedFractionSeries& series, std::ostream& out);

// Deterministic seed derivation for pipeline stages.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace sndrr

#endif  // SNDRR_BENCH_HPP
