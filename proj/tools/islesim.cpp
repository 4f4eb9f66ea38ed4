// islesim: island-model evolutionary algorithm simulator and bound evaluator
// for sorting, shortest paths, and Eulerian cycles.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isle/bounds.hpp"
#include "isle/emit.hpp"
#include "isle/experiment.hpp"
#include "isle/stats.hpp"
#include "isle/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInvalidInput = 2;

void print_summary(const isle::ExperimentResult& result) {
    std::printf("%6s %8s %12s %12s %12s %12s %12s %8s\n", "mu", "count", "mean", "median",
                "stddev", "ci95", "iqr", "capped");
    for (const auto& cell : result.cells) {
        // Interquartile range from the raw rows of this cell.
        std::vector<double> times;
        for (const auto& row : result.rows) {
            if (row.mu == cell.mu && !row.capped) {
                times.push_back(static_cast<double>(row.parallel_time));
            }
        }
        double iqr = 0.0;
        if (!times.empty()) {
            iqr = isle::quantile_of(times, 0.75) - isle::quantile_of(times, 0.25);
        }
        std::printf("%6u %8zu %12.2f %12.2f %12.2f %12.2f %12.2f %8zu\n", cell.mu,
                    cell.stats.count, cell.stats.mean, cell.stats.median, cell.stats.stddev,
                    cell.stats.ci95_half_width, iqr, cell.stats.cap_hits);
    }
    for (const auto& cell : result.cells) {
        if (cell.stats.cap_hits > 0) {
            std::fprintf(stderr,
                         "warning: mu=%u hit the generation cap in %zu run(s); those runs are "
                         "excluded from the statistics above\n",
                         cell.mu, cell.stats.cap_hits);
        }
    }
    bool has_baseline = false;
    for (const auto& cell : result.cells) {
        if (cell.mu == 1 && cell.stats.count > 0) {
            has_baseline = true;
        }
    }
    if (has_baseline) {
        std::printf("\n%6s %12s %12s\n", "mu", "speedup", "efficiency");
        for (const auto& row : isle::speedup_table(result)) {
            std::printf("%6u %12.3f %12.3f\n", row.mu, row.speedup, row.efficiency);
        }
    }
}

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& output, const std::optional<std::string>& mu_list,
            const std::optional<std::string>& tau, const std::optional<std::uint32_t>& reps,
            const std::optional<std::string>& svg_path, unsigned jobs) {
    isle::ExperimentSpec spec = isle::parse_experiment_file(config_path);
    if (seed) {
        spec.seed = *seed;
    }
    if (output) {
        spec.output = *output;
    }
    if (reps) {
        spec.replications = *reps;
    }
    if (mu_list) {
        spec.mu_list.clear();
        std::stringstream items(*mu_list);
        std::string item;
        while (std::getline(items, item, ',')) {
            spec.mu_list.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        }
    }
    if (tau) {
        spec.tau = *tau == "never" ? isle::kNeverMigrate : std::stoull(*tau);
    }
    spec.validate();

    const isle::ExperimentResult result = isle::run_experiment(spec, jobs);
    print_summary(result);
    if (!spec.output.empty()) {
        isle::emit_csv(result.rows, spec.output);
        std::printf("\nwrote %zu rows to %s\n", result.rows.size(), spec.output.c_str());
    }
    if (svg_path) {
        isle::Series series;
        series.label = "mean parallel time";
        for (const auto& cell : result.cells) {
            if (cell.stats.count > 0) {
                series.points.emplace_back(double(cell.mu), cell.stats.mean);
            }
        }
        isle::SvgOptions options;
        options.title = "mean parallel optimization time";
        options.y_label = "generations";
        options.log_x = true;
        options.log_y = true;
        isle::emit_svg({series}, options, *svg_path);
        std::printf("wrote chart to %s\n", svg_path->c_str());
    }
    return kExitOk;
}

void print_report(const isle::BoundReport& report, bool csv) {
    if (csv) {
        std::printf("%s,%u,%.6g,%.6g,%.6g\n", isle::to_string(report.kind), report.mu,
                    report.spread_term, report.sequential_term, report.value);
    } else {
        std::printf("%-9s mu=%-5u spread=%-14.6g sequential=%-14.6g value=%.6g\n",
                    isle::to_string(report.kind), report.mu, report.spread_term,
                    report.sequential_term, report.value);
    }
}

int cmd_bounds(const std::string& problem, const std::string& measure, const std::string& op,
               std::uint32_t n, std::uint32_t ell, const std::string& mu_csv,
               const std::string& topology, bool csv) {
    std::vector<std::uint32_t> mu_list;
    std::stringstream items(mu_csv);
    std::string item;
    while (std::getline(items, item, ',')) {
        mu_list.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    if (mu_list.empty()) {
        throw std::invalid_argument("bounds: --mu list must not be empty");
    }

    std::vector<isle::LevelProbabilities> level_sets;
    if (problem == "sorting") {
        const isle::SortMeasure m = isle::sort_measure_from_string(measure);
        level_sets.push_back(m == isle::SortMeasure::inv ? isle::sorting_levels_inv(n)
                                                         : isle::sorting_levels_scalar(n, m));
    } else if (problem == "sssp") {
        const isle::SsspInstance instance = ell <= 1 ? isle::gen_path_graph(n, 1.0)
                                                     : isle::gen_layered_instance(n, ell);
        level_sets = isle::sssp_levels(instance.profile, n,
                                       static_cast<std::uint32_t>(instance.graph.edge_count()),
                                       isle::sssp_operator_from_string(op));
    } else {
        throw std::invalid_argument("bounds: --problem must be sorting or sssp");
    }

    if (csv) {
        std::printf("topology,mu,spread_term,sequential_term,value\n");
    }
    for (std::uint32_t mu : mu_list) {
        auto sum_reports = [&](auto evaluate) {
            isle::BoundReport total{};
            bool first = true;
            for (const auto& levels : level_sets) {
                const isle::BoundReport r = evaluate(levels, mu);
                if (first) {
                    total = r;
                    first = false;
                } else {
                    total.spread_term += r.spread_term;
                    total.sequential_term += r.sequential_term;
                    total.value += r.value;
                }
            }
            return total;
        };
        if (topology == "ring" || topology == "all") {
            print_report(sum_reports([](const auto& l, std::uint32_t m) {
                             return isle::bound_ring(l, m);
                         }),
                         csv);
        }
        if (topology == "torus" || topology == "all") {
            if (!isle::torus_bound_applicable(mu)) {
                std::fprintf(stderr,
                             "warning: torus bound assumes square island counts >= 4; mu=%u "
                             "is outside that range\n",
                             mu);
            }
            print_report(sum_reports([](const auto& l, std::uint32_t m) {
                             return isle::bound_torus(l, m);
                         }),
                         csv);
        }
        if (topology == "complete" || topology == "all") {
            print_report(sum_reports([](const auto& l, std::uint32_t m) {
                             return isle::bound_complete(l, m);
                         }),
                         csv);
        }
    }
    return kExitOk;
}

int cmd_verify(const std::vector<std::string>& selectors, unsigned jobs) {
    const auto results = isle::run_criteria(selectors, jobs);
    bool all_pass = true;
    for (const auto& result : results) {
        std::printf("%s %-18s (%.1fs) %s\n", result.pass ? "PASS" : "FAIL", result.name.c_str(),
                    result.seconds, result.detail.c_str());
        all_pass = all_pass && result.pass;
    }
    return all_pass ? kExitOk : kExitVerificationFailure;
}

int cmd_probe_decision(std::uint32_t m, std::uint32_t runs, std::uint64_t seed, unsigned jobs) {
    const auto result = isle::probe_decision_experiment(m, runs, seed, jobs);
    std::printf("runs=%u opposite_cycle=%u same_cycle=%u not_applicable=%u undecided=%u\n", runs,
                result.opposite_cycle, result.same_cycle, result.not_applicable,
                result.undecided);
    std::printf("opposite-cycle frequency among applicable runs: %.4f\n", result.frequency);
    return kExitOk;
}

int cmd_rw(std::uint32_t k, std::uint32_t trials, std::uint64_t seed) {
    isle::Rng rng(seed);
    const auto samples = isle::rw_hitting_simulate(k, trials, rng);
    std::vector<double> values(samples.begin(), samples.end());
    const isle::SummaryStats stats = isle::summarize(values, 0);
    std::printf("k=%u trials=%u mean=%.3f (k^2=%u) median=%.1f stddev=%.3f\n", k, trials,
                stats.mean, k * k, stats.median, stats.stddev);
    std::printf("%8s %12s %12s %12s\n", "t", "empirical", "bound", "clipped");
    for (std::uint64_t t = k; t <= static_cast<std::uint64_t>(k) * k * 4; t *= 2) {
        std::uint64_t hits = 0;
        for (std::uint64_t sample : samples) {
            if (sample <= t) {
                ++hits;
            }
        }
        std::printf("%8llu %12.5f %12.5g %12.5f\n", static_cast<unsigned long long>(t),
                    double(hits) / trials, isle::rw_hitting_cumulative_bound(k, t),
                    isle::rw_hitting_cumulative_bound_clipped(k, t));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"island-model evolutionary algorithm simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned jobs = 0;
    app.add_option("-j,--jobs", jobs, "worker threads (default: hardware concurrency)");

    auto* run_cmd = app.add_subcommand("run", "run a replicated experiment from a config file");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output, mu_csv, tau, svg;
    std::optional<std::uint32_t> replications;
    run_cmd->add_option("config", config_path, "experiment config file")->required();
    run_cmd->add_option("--seed", seed, "master seed (overrides config)");
    run_cmd->add_option("--output", output, "raw results csv path (overrides config)");
    run_cmd->add_option("--mu", mu_csv, "comma-separated island counts (overrides config)");
    run_cmd->add_option("--tau", tau, "migration interval or `never` (overrides config)");
    run_cmd->add_option("--replications", replications, "replications per cell");
    run_cmd->add_option("--svg", svg, "write a mean-time-vs-mu chart to this path");

    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate expected-time upper bounds");
    std::string bounds_problem = "sorting", bounds_measure = "inv", bounds_op = "vertex";
    std::string bounds_topology = "all", bounds_mu = "1";
    std::uint32_t bounds_n = 0, bounds_ell = 1;
    bool bounds_csv = false;
    bounds_cmd->add_option("--problem", bounds_problem, "sorting | sssp")->required();
    bounds_cmd->add_option("--n", bounds_n, "instance size n")->required();
    bounds_cmd->add_option("--measure", bounds_measure, "inv | ham | las | exc (sorting)");
    bounds_cmd->add_option("--operator", bounds_op, "vertex | edge (sssp)");
    bounds_cmd->add_option("--ell", bounds_ell, "layer count for the balanced sssp instance");
    bounds_cmd->add_option("--mu", bounds_mu, "comma-separated island counts");
    bounds_cmd->add_option("--topology", bounds_topology, "ring | torus | complete | all");
    bounds_cmd->add_flag("--csv", bounds_csv, "emit csv instead of aligned text");

    auto* verify_cmd = app.add_subcommand("verify", "run acceptance checks");
    std::vector<std::string> selectors;
    verify_cmd->add_option("selector", selectors,
                           "criteria to run (default: all); see README for names");

    auto* probe_cmd = app.add_subcommand("probe-decision",
                                         "decision frequency at the junction of two cycles");
    std::uint32_t probe_m = 24, probe_runs = 2000;
    std::uint64_t probe_seed = 0;
    probe_cmd->add_option("--m", probe_m, "edge count (even, m/2 >= 3)")->required();
    probe_cmd->add_option("--runs", probe_runs, "number of runs")->required();
    probe_cmd->add_option("--seed", probe_seed, "seed")->required();

    auto* rw_cmd = app.add_subcommand("rw", "fair random walk hitting-time simulation");
    std::uint32_t rw_k = 8, rw_trials = 100000;
    std::uint64_t rw_seed = 0;
    rw_cmd->add_option("--k", rw_k, "hitting boundary |state| = k")->required();
    rw_cmd->add_option("--trials", rw_trials, "number of walks")->required();
    rw_cmd->add_option("--seed", rw_seed, "seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(config_path, seed, output, mu_csv, tau, replications, svg, jobs);
        }
        if (bounds_cmd->parsed()) {
            return cmd_bounds(bounds_problem, bounds_measure, bounds_op, bounds_n, bounds_ell,
                              bounds_mu, bounds_topology, bounds_csv);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(selectors, jobs);
        }
        if (probe_cmd->parsed()) {
            return cmd_probe_decision(probe_m, probe_runs, probe_seed, jobs);
        }
        if (rw_cmd->parsed()) {
            return cmd_rw(rw_k, rw_trials, rw_seed);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalidInput;
    }
    return kExitOk;
}
