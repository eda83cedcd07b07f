#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sndrr/backend.hpp"
#include "sndrr/bench.hpp"
#include "sndrr/ddd.hpp"
#include "sndrr/generate.hpp"
#include "sndrr/instance_io.hpp"
#include "sndrr/mip_models.hpp"

namespace {

// Exit codes: 0 success, 1 usage/other, 2 validation failure, 3 backend
// failure, 4 time limit on a required solve.
constexpr int kExitValidation = 2;
constexpr int kExitBackend = 3;
constexpr int kExitTimeLimit = 4;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

int cmd_generate(const std::string& family, const sndrr::GridRow& row, double sigma_factor,
                 double mu_factor, int alpha, int tau_max, std::uint64_t seed,
                 const std::string& out_path) {
    const sndrr::Instance instance =
        sndrr::build_family_instance(family, row, sigma_factor, mu_factor, alpha, tau_max, seed);
    const auto violations = sndrr::validate(instance);
    if (!violations.empty()) {
        std::cerr << "generated instance failed validation: " << violations.front() << "\n";
        return kExitValidation;
    }
    if (out_path.empty() || out_path == "-") {
        sndrr::write_instance(instance, std::cout);
    } else {
        sndrr::write_instance_file(instance, out_path);
    }
    return 0;
}

int cmd_solve(const std::string& in_path, const sndrr::DddConfig& config,
              const std::string& out_path, const std::string& trace_path) {
    const sndrr::Instance instance = sndrr::read_instance_file(in_path);
    const auto violations = sndrr::validate(instance);
    if (!violations.empty()) {
        std::cerr << "instance invalid:\n";
        for (const auto& v : violations) std::cerr << "  " << v << "\n";
        return kExitValidation;
    }
    const sndrr::DddResult result = sndrr::solve_with_method(instance, config);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file = open_out(out_path);
        out = &file;
    }
    *out << "method\tstatus\tobjective\tlower_bound\tgap\titerations\tfinal_vars\tfinal_cons"
         << "\tsafeguards\truntime_s\n";
    *out << result.method << "\t" << to_string(result.status) << "\t" << result.objective << "\t"
         << result.lower_bound << "\t" << result.gap << "\t" << result.iterations << "\t"
         << result.final_vars << "\t" << result.final_cons << "\t" << result.safeguard_events
         << "\t" << result.wall_seconds << "\n";

    if (!trace_path.empty()) {
        auto trace = open_out(trace_path);
        trace << "iteration\tlower_bound\tmodel_bound\tupper_bound\tvars\tcons\ttimed_nodes"
              << "\tinfeasible\tnodes_added\tsafeguard\twall_s\n";
        for (const auto& it : result.trace) {
            trace << it.iteration << "\t" << it.lower_bound << "\t" << it.model_bound << "\t"
                  << it.upper_bound << "\t" << it.var_count << "\t" << it.constraint_count << "\t"
                  << it.timed_node_count << "\t" << it.infeasible_count << "\t" << it.nodes_added
                  << "\t" << (it.safeguard_used ? 1 : 0) << "\t" << it.wall_seconds << "\n";
        }
    }
    if (result.status == sndrr::SolveStatus::time_limit) return kExitTimeLimit;
    return 0;
}

int cmd_bench(const sndrr::CampaignSpec& spec, const std::string& out_path) {
    const sndrr::CampaignReport report = sndrr::run_campaign(spec);
    if (out_path.empty() || out_path == "-") {
        sndrr::write_rows(report.rows, std::cout);
    } else {
        auto out = open_out(out_path);
        sndrr::write_rows(report.rows, out);
    }
    return 0;
}

int cmd_report(const std::string& in_path, const std::string& out_prefix) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "cannot open results file: " << in_path << "\n";
        return 1;
    }
    const auto rows = sndrr::read_rows(in);
    auto deciles = open_out(out_prefix + "_deciles.tsv");
    sndrr::write_decile_table(sndrr::decile_table(rows), deciles);
    auto ratios = open_out(out_prefix + "_ratios.tsv");
    sndrr::write_ratio_summary(sndrr::ratio_summary(rows), ratios);
    auto solved = open_out(out_prefix + "_solved_fraction.tsv");
    sndrr::write_solved_fraction(sndrr::solved_fraction_series(rows), solved);
    std::cout << "wrote " << out_prefix << "_deciles.tsv, " << out_prefix << "_ratios.tsv, "
              << out_prefix << "_solved_fraction.tsv\n";
    return 0;
}

int cmd_inspect(const std::string& in_path, const std::string& partition_name, bool dump_model) {
    const sndrr::Instance raw = sndrr::read_instance_file(in_path);
    const auto violations = sndrr::validate(raw);
    if (!violations.empty()) {
        std::cerr << "instance invalid:\n";
        for (const auto& v : violations) std::cerr << "  " << v << "\n";
        return kExitValidation;
    }
    const sndrr::Instance instance = sndrr::preprocess(raw);
    std::cout << "nodes\t" << instance.network.num_nodes() << "\n"
              << "arcs\t" << instance.network.num_arcs() << "\n"
              << "commodities\t" << instance.commodities.size() << "\n"
              << "horizon\t" << instance.horizon << "\n"
              << "cost_ratio\t" << sndrr::measured_cost_ratio(instance) << "\n"
              << "capacity_ratio\t" << sndrr::measured_capacity_ratio(instance) << "\n";
    if (!partition_name.empty()) {
        const auto partition =
            sndrr::make_partition(instance, sndrr::parse_partition(partition_name));
        std::cout << "partition (" << partition_name << "):\n";
        partition.dump(std::cout);
        const sndrr::AuxGraph aux(instance.network, partition);
        std::cout << "aux_nodes\t" << aux.num_aux_nodes() << "\n"
                  << "aux_arcs\t" << aux.num_aux_arcs() << "\n";
    }
    if (dump_model) {
        const sndrr::SndModel model = sndrr::build_full_model(instance);
        model.write_lp(std::cout);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Service network design with restricted routes: generators, DDD solvers, benchmarks"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "emit a random instance");
    std::string family = "paths";
    sndrr::GridRow row;
    double sigma_factor = 1.0 / 6.0;
    double mu_factor = 1.0 / 4.0;
    int alpha = 5;
    int tau_max = 10;
    std::uint64_t seed = 1;
    std::string out_path;
    generate->add_option("--family", family, "crainic|paths|hubspoke|critical");
    generate->add_option("--nodes", row.nodes);
    generate->add_option("--arcs", row.arcs);
    generate->add_option("--commodities", row.commodities);
    generate->add_option("--hubs", row.hubs, "hub count (hubspoke family)");
    generate->add_option("--cost-ratio", row.cost_ratio, "target F");
    generate->add_option("--capacity-ratio", row.capacity_ratio, "target C");
    generate->add_option("--sigma-factor", sigma_factor, "release std-dev as a fraction of L");
    generate->add_option("--mu-factor", mu_factor, "flexibility mean as a fraction of L");
    generate->add_option("--alpha", alpha, "critical-time intervals (critical family)");
    generate->add_option("--tau-max", tau_max, "largest rescaled transit time");
    generate->add_option("--seed", seed);
    generate->add_option("--out", out_path, "output file (default stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance file");
    std::string solve_in;
    std::string method = "node";
    std::string partition = "finest";
    std::string backend_name;
    std::string solve_out;
    std::string trace_path;
    double gap = 0.01;
    double time_limit = 3600.0;
    solve->add_option("--in", solve_in)->required();
    solve->add_option("--method", method, "node|arc|direct");
    solve->add_option("--gap", gap, "relative optimality gap");
    solve->add_option("--time-limit", time_limit, "seconds");
    solve->add_option("--partition", partition, "finest|hubspoke|trivial");
    solve->add_option("--backend", backend_name, "solver backend (or SNDRR_BACKEND)");
    solve->add_option("--out", solve_out, "result file (default stdout)");
    solve->add_option("--trace", trace_path, "per-iteration trace file");

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark campaign");
    sndrr::CampaignSpec spec;
    std::string bench_methods = "node,arc";
    std::string bench_out;
    std::string bench_partition;
    bench->add_option("--family", spec.family, "paths|hubspoke|critical");
    bench->add_option("--methods", bench_methods, "comma-separated subset of node,arc,direct");
    bench->add_option("--gap", spec.gap);
    bench->add_option("--time-limit", spec.time_limit_seconds, "per-instance seconds");
    bench->add_option("--seed", spec.seed, "global seed");
    bench->add_option("--seeds-per-row", spec.seeds_per_row);
    bench->add_option("--jobs", spec.jobs, "worker pool size (0 = hardware)");
    bench->add_option("--sigma-factor", spec.sigma_factor);
    bench->add_option("--mu-factor", spec.mu_factor);
    bench->add_option("--alpha", spec.alpha);
    bench->add_option("--tau-max", spec.tau_max);
    bench->add_option("--partition", bench_partition, "override: finest|hubspoke|trivial");
    bench->add_option("--out", bench_out, "results file (default stdout)");

    // report
    auto* report = app.add_subcommand("report", "aggregate a results file into tables");
    std::string report_in;
    std::string report_prefix = "report";
    report->add_option("--in", report_in)->required();
    report->add_option("--out-prefix", report_prefix);

    // inspect
    auto* inspect = app.add_subcommand("inspect", "summarize an instance file");
    std::string inspect_in;
    std::string inspect_partition;
    bool inspect_model = false;
    inspect->add_option("--in", inspect_in)->required();
    inspect->add_option("--partition", inspect_partition, "also dump this partition");
    inspect->add_flag("--model", inspect_model, "dump the full model in LP format");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            return cmd_generate(family, row, sigma_factor, mu_factor, alpha, tau_max, seed, out_path);
        }
        if (solve->parsed()) {
            sndrr::DddConfig config;
            config.method = sndrr::parse_method(method);
            config.gap = gap;
            config.time_limit_seconds = time_limit;
            config.partition = sndrr::parse_partition(partition);
            config.backend = backend_name;
            return cmd_solve(solve_in, config, solve_out, trace_path);
        }
        if (bench->parsed()) {
            spec.methods.clear();
            std::stringstream stream(bench_methods);
            std::string token;
            while (std::getline(stream, token, ',')) {
                if (!token.empty()) spec.methods.push_back(sndrr::parse_method(token));
            }
            if (!bench_partition.empty()) spec.partition = sndrr::parse_partition(bench_partition);
            return cmd_bench(spec, bench_out);
        }
        if (report->parsed()) return cmd_report(report_in, report_prefix);
        if (inspect->parsed()) return cmd_inspect(inspect_in, inspect_partition, inspect_model);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    }
    return 1;
}
