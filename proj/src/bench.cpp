#include "sndrr/bench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sndrr/generate.hpp"

namespace sndrr {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<GridRow> default_grid(const std::string& family) {
    std::vector<GridRow> grid;
    if (family == "paths" || family == "crainic") {
        for (int size = 0; size < 2; ++size) {
            for (double f : {0.05, 0.1}) {
                for (double c : {1.0, 8.0}) {
                    GridRow row;
                    row.nodes = size == 0 ? 8 : 10;
                    row.arcs = size == 0 ? 24 : 30;
                    row.commodities = size == 0 ? 10 : 12;
                    row.cost_ratio = f;
                    row.capacity_ratio = c;
                    grid.push_back(row);
                }
            }
        }
    } else if (family == "hubspoke") {
        for (int size = 0; size < 2; ++size) {
            for (double f : {0.05, 0.1}) {
                for (double c : {1.0, 8.0}) {
                    GridRow row;
                    row.nodes = size == 0 ? 10 : 12;
                    row.hubs = size == 0 ? 3 : 4;
                    row.arcs = size == 0 ? 26 : 34;
                    row.commodities = size == 0 ? 8 : 10;
                    row.cost_ratio = f;
                    row.capacity_ratio = c;
                    grid.push_back(row);
                }
            }
        }
    } else if (family == "critical") {
        for (double f : {0.05, 0.1}) {
            for (double c : {1.0, 8.0}) {
                GridRow row;
                row.nodes = 8;
                row.arcs = 24;
                row.commodities = 10;
                row.cost_ratio = f;
                row.capacity_ratio = c;
                grid.push_back(row);
            }
        }
    } else {
        throw std::invalid_argument("unknown family: " + family);
    }
    return grid;
}

Instance build_family_instance(const std::string& family, const GridRow& row,
                               double sigma_factor, double mu_factor, int alpha, int tau_max,
                               std::uint64_t seed) {
    if (family == "hubspoke") {
        HubSpokeParams params;
        params.nodes = row.nodes;
        params.hubs = row.hubs;
        params.arcs = row.arcs;
        params.commodities = row.commodities;
        params.cost_ratio = row.cost_ratio;
        params.capacity_ratio = row.capacity_ratio;
        params.seed = mix_seed(seed, 1);
        Instance instance = generate_hub_spoke_flat(params);
        return generate_timed_attributes_scaled(std::move(instance), sigma_factor, mu_factor,
                                                mix_seed(seed, 2), /*keep_transit=*/true, tau_max);
    }
    CrainicParams params;
    params.nodes = row.nodes;
    params.arcs = row.arcs;
    params.commodities = row.commodities;
    params.cost_ratio = row.cost_ratio;
    params.capacity_ratio = row.capacity_ratio;
    params.seed = mix_seed(seed, 1);
    Instance instance = generate_crainic_flat(params);
    instance = generate_timed_attributes_scaled(std::move(instance), sigma_factor, mu_factor,
                                                mix_seed(seed, 2), /*keep_transit=*/false, tau_max);
    if (family == "paths") {
        return assign_designated_paths(std::move(instance));
    }
    if (family == "critical") {
        return apply_critical_times(std::move(instance), alpha, mix_seed(seed, 3));
    }
    if (family == "crainic") {
        return instance;
    }
    throw std::invalid_argument("unknown family: " + family);
}

CampaignReport run_campaign(const CampaignSpec& spec, std::vector<DddResult>* collected_results) {
    const std::vector<GridRow> grid = spec.grid.empty() ? default_grid(spec.family) : spec.grid;
    const PartitionSource partition = spec.partition.value_or(
        spec.family == "hubspoke" ? PartitionSource::hubspoke : PartitionSource::finest);

    struct Job {
        int instance_id;
        GridRow row;
        std::uint64_t seed;
        DddMethod method;
    };
    std::vector<Job> jobs;
    int instance_id = 0;
    for (const GridRow& row : grid) {
        for (int s = 0; s < spec.seeds_per_row; ++s) {
            const std::uint64_t seed = mix_seed(spec.seed, static_cast<std::uint64_t>(instance_id));
            for (DddMethod method : spec.methods) {
                jobs.push_back({instance_id, row, seed, method});
            }
            ++instance_id;
        }
    }

    std::vector<RunRecord> rows(jobs.size());
    std::vector<DddResult> results(jobs.size());
    std::mutex next_mutex;
    std::size_t next_job = 0;
    auto worker = [&]() {
        for (;;) {
            std::size_t index;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next_job >= jobs.size()) return;
                index = next_job++;
            }
            const Job& job = jobs[index];
            const Instance instance =
                build_family_instance(spec.family, job.row, spec.sigma_factor, spec.mu_factor,
                                      spec.alpha, spec.tau_max, job.seed);
            DddConfig config;
            config.method = job.method;
            config.gap = spec.gap;
            config.time_limit_seconds = spec.time_limit_seconds;
            config.partition = partition;
            const DddResult result = solve_with_method(instance, config);

            RunRecord record;
            record.instance_id = job.instance_id;
            record.family = spec.family;
            record.nodes = job.row.nodes;
            record.arcs = job.row.arcs;
            record.commodities = job.row.commodities;
            record.cost_ratio = job.row.cost_ratio;
            record.capacity_ratio = job.row.capacity_ratio;
            record.seed = job.seed;
            record.method = result.method;
            record.status = to_string(result.status);
            record.runtime_seconds = result.wall_seconds;
            record.objective = result.objective;
            record.lower_bound = result.lower_bound;
            record.gap = result.gap;
            record.iterations = result.iterations;
            record.final_vars = result.final_vars;
            record.final_cons = result.final_cons;
            record.timed_nodes =
                result.trace.empty() ? 0 : result.trace.back().timed_node_count;
            record.safeguards = result.safeguard_events;
            rows[index] = std::move(record);
            results[index] = std::move(result);
        }
    };

    int num_workers = spec.jobs > 0 ? spec.jobs
                                    : static_cast<int>(std::thread::hardware_concurrency());
    num_workers = std::max(1, std::min<int>(num_workers, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < num_workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    CampaignReport report;
    report.rows = std::move(rows);
    if (collected_results != nullptr) *collected_results = std::move(results);
    return report;
}

namespace {

const char* kHeader =
    "instance\tfamily\tnodes\tarcs\tcommodities\tF\tC\tseed\tmethod\tstatus\truntime_s\t"
    "objective\tlower_bound\tgap\titerations\tfinal_vars\tfinal_cons\ttimed_nodes\tsafeguards";

bool solved(const RunRecord& row) {
    return row.status == "optimal" || row.status == "within_gap";
}

}  // namespace

void write_rows(const std::vector<RunRecord>& rows, std::ostream& out) {
    out << kHeader << "\n";
    for (const RunRecord& r : rows) {
        out << r.instance_id << "\t" << r.family << "\t" << r.nodes << "\t" << r.arcs << "\t"
            << r.commodities << "\t" << r.cost_ratio << "\t" << r.capacity_ratio << "\t" << r.seed
            << "\t" << r.method << "\t" << r.status << "\t" << r.runtime_seconds << "\t"
            << r.objective << "\t" << r.lower_bound << "\t" << r.gap << "\t" << r.iterations
            << "\t" << r.final_vars << "\t" << r.final_cons << "\t" << r.timed_nodes << "\t"
            << r.safeguards << "\n";
    }
}

std::vector<RunRecord> read_rows(std::istream& in) {
    std::vector<RunRecord> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("result file is empty");
    if (line != kHeader) throw std::runtime_error("result file has an unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        RunRecord r;
        fields >> r.instance_id >> r.family >> r.nodes >> r.arcs >> r.commodities >> r.cost_ratio >>
            r.capacity_ratio >> r.seed >> r.method >> r.status >> r.runtime_seconds >> r.objective >>
            r.lower_bound >> r.gap >> r.iterations >> r.final_vars >> r.final_cons >>
            r.timed_nodes >> r.safeguards;
        if (fields.fail()) throw std::runtime_error("malformed result row: " + line);
        rows.push_back(std::move(r));
    }
    return rows;
}

RatioSummary ratio_summary(const std::vector<RunRecord>& rows) {
    // Index runs by instance, keep instances solved by both methods.
    std::map<int, const RunRecord*> node_runs;
    std::map<int, const RunRecord*> arc_runs;
    for (const RunRecord& r : rows) {
        if (r.method == "node") node_runs[r.instance_id] = &r;
        if (r.method == "arc") arc_runs[r.instance_id] = &r;
    }
    RatioSummary summary;
    for (const auto& [id, node] : node_runs) {
        auto it = arc_runs.find(id);
        if (it == arc_runs.end()) continue;
        const RunRecord* arc = it->second;
        if (!solved(*node) || !solved(*arc)) continue;
        ++summary.co_solved;
        summary.node_iterations += node->iterations;
        summary.arc_iterations += arc->iterations;
        summary.node_vars += static_cast<double>(node->final_vars);
        summary.arc_vars += static_cast<double>(arc->final_vars);
        summary.node_cons += static_cast<double>(node->final_cons);
        summary.arc_cons += static_cast<double>(arc->final_cons);
        summary.node_runtime += node->runtime_seconds;
        summary.arc_runtime += arc->runtime_seconds;
    }
    if (summary.co_solved > 0) {
        const double n = summary.co_solved;
        summary.node_iterations /= n;
        summary.arc_iterations /= n;
        summary.node_vars /= n;
        summary.arc_vars /= n;
        summary.node_cons /= n;
        summary.arc_cons /= n;
        summary.node_runtime /= n;
        summary.arc_runtime /= n;
        summary.iteration_ratio = summary.arc_iterations / summary.node_iterations;
        summary.var_ratio = summary.arc_vars / summary.node_vars;
        summary.cons_ratio = summary.arc_cons / summary.node_cons;
        summary.runtime_ratio = summary.node_runtime > 0.0
                                    ? summary.arc_runtime / summary.node_runtime
                                    : 0.0;
    }
    return summary;
}

DecileTable decile_table(const std::vector<RunRecord>& rows) {
    DecileTable table;
    std::map<std::string, std::vector<const RunRecord*>> by_method;
    for (const RunRecord& r : rows) by_method[r.method].push_back(&r);
    for (const auto& [method, runs] : by_method) table.methods.push_back(method);

    std::map<std::string, std::vector<const RunRecord*>> sorted = by_method;
    for (auto& [method, runs] : sorted) {
        std::sort(runs.begin(), runs.end(), [](const RunRecord* a, const RunRecord* b) {
            return a->runtime_seconds < b->runtime_seconds;
        });
    }
    for (int d = 1; d <= 10; ++d) {
        DecileRow row;
        row.decile = d / 10.0;
        for (const std::string& method : table.methods) {
            const auto& runs = sorted[method];
            const std::size_t lo = (runs.size() * (d - 1)) / 10;
            const std::size_t hi = std::max(lo + 1, (runs.size() * d) / 10);
            double runtime = 0.0;
            double gap = 0.0;
            std::size_t count = 0;
            for (std::size_t i = lo; i < hi && i < runs.size(); ++i) {
                runtime += runs[i]->runtime_seconds;
                gap += runs[i]->gap;
                ++count;
            }
            row.mean_runtime.push_back(count ? runtime / count : 0.0);
            row.mean_gap.push_back(count ? gap / count : 0.0);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SolvedFractionSeries solved_fraction_series(const std::vector<RunRecord>& rows) {
    SolvedFractionSeries series;
    std::map<std::string, std::vector<double>> times_by_method;
    std::map<std::string, std::size_t> totals;
    double max_time = 0.0;
    for (const RunRecord& r : rows) {
        ++totals[r.method];
        if (solved(r)) times_by_method[r.method].push_back(r.runtime_seconds);
        max_time = std::max(max_time, r.runtime_seconds);
    }
    for (const auto& [method, total] : totals) series.methods.push_back(method);
    for (auto& [method, times] : times_by_method) std::sort(times.begin(), times.end());

    const int kPoints = 50;
    for (int i = 0; i <= kPoints; ++i) {
        series.times.push_back(max_time * i / kPoints);
    }
    for (const std::string& method : series.methods) {
        std::vector<double> fractions;
        const auto& times = times_by_method[method];
        const double total = static_cast<double>(totals[method]);
        for (double t : series.times) {
            const auto solved_by_t =
                std::upper_bound(times.begin(), times.end(), t) - times.begin();
            fractions.push_back(total > 0 ? static_cast<double>(solved_by_t) / total : 0.0);
        }
        series.fractions.push_back(std::move(fractions));
    }
    return series;
}

void write_ratio_summary(const RatioSummary& summary, std::ostream& out) {
    out << "metric\tarc\tnode\tratio\n";
    out << "iterations\t" << summary.arc_iterations << "\t" << summary.node_iterations << "\t"
        << summary.iteration_ratio << "\n";
    out << "variables\t" << summary.arc_vars << "\t" << summary.node_vars << "\t"
        << summary.var_ratio << "\n";
    out << "constraints\t" << summary.arc_cons << "\t" << summary.node_cons << "\t"
        << summary.cons_ratio << "\n";
    out << "runtime_s\t" << summary.arc_runtime << "\t" << summary.node_runtime << "\t"
        << summary.runtime_ratio << "\n";
    out << "co_solved\t" << summary.co_solved << "\t" << summary.co_solved << "\t1\n";
}

void write_decile_table(const DecileTable& table, std::ostream& out) {
    out << "decile";
    for (const std::string& m : table.methods) out << "\truntime_" << m;
    for (const std::string& m : table.methods) out << "\tgap_" << m;
    out << "\n";
    for (const DecileRow& row : table.rows) {
        out << row.decile;
        for (double v : row.mean_runtime) out << "\t" << v;
        for (double v : row.mean_gap) out << "\t" << v;
        out << "\n";
    }
}

void write_solved_fraction(const SolvedFractionSeries& series, std::ostream& out) {
    out << "time_s";
    for (const std::string& m : series.methods) out << "\tsolved_" << m;
    out << "\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << series.times[i];
        for (const auto& fractions : series.fractions) out << "\t" << fractions[i];
        out << "\n";
    }
}

}  // namespace sndrr
