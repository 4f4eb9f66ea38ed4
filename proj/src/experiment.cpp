#include "isle/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace isle {

const char* to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::sorting: return "sorting";
        case ProblemKind::sssp: return "sssp";
        case ProblemKind::eulerian: return "eulerian";
    }
    return "?";
}

void ExperimentSpec::validate() const {
    if (mu_list.empty()) {
        throw std::invalid_argument("spec field mu: list must not be empty");
    }
    for (std::uint32_t mu : mu_list) {
        if (mu == 0) {
            throw std::invalid_argument("spec field mu: entries must be positive");
        }
        if (topology == TopologyKind::torus) {
            const auto root = static_cast<std::uint32_t>(std::lround(std::sqrt(double(mu))));
            if (mu < 4 || root * root != mu) {
                throw std::invalid_argument(
                    "spec field mu: torus topology requires square island counts >= 4");
            }
        }
    }
    if (replications == 0) {
        throw std::invalid_argument("spec field replications: must be >= 1");
    }
    if (!seed) {
        throw std::invalid_argument("spec field seed: required (no wall-clock seeding)");
    }
    if (tau == 0) {
        throw std::invalid_argument("spec field tau: must be >= 1 or never");
    }
    if (max_generations == 0) {
        throw std::invalid_argument("spec field max_generations: must be positive");
    }
    if (topology == TopologyKind::custom && topology_file.empty()) {
        throw std::invalid_argument("spec field topology: custom requires custom:PATH");
    }
    switch (problem) {
        case ProblemKind::sorting:
            if (size < 2) {
                throw std::invalid_argument("spec field size: sorting needs n >= 2");
            }
            break;
        case ProblemKind::sssp:
            if (instance != "path" && instance != "layered" &&
                instance.rfind("file:", 0) != 0) {
                throw std::invalid_argument(
                    "spec field instance: sssp accepts path, layered, or file:PATH");
            }
            if (instance == "layered") {
                if (size < 3 || layers < 1 || (size - 1) % layers != 0) {
                    throw std::invalid_argument(
                        "spec field layers: must divide n-1 for layered instances");
                }
            }
            if (instance == "path" && size < 3) {
                throw std::invalid_argument("spec field size: sssp path needs n >= 3");
            }
            break;
        case ProblemKind::eulerian:
            if (instance != "double-cycle" && instance.rfind("file:", 0) != 0) {
                throw std::invalid_argument(
                    "spec field instance: eulerian accepts double-cycle or file:PATH");
            }
            if (instance == "double-cycle" && (size % 2 != 0 || size / 2 < 3)) {
                throw std::invalid_argument(
                    "spec field size: double-cycle needs even m with m/2 >= 3");
            }
            break;
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        if (value.empty() || value[0] == '-') {
            throw std::invalid_argument("not a nonnegative integer");
        }
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("spec field " + key + ": not a valid number: " + value);
    }
}

}  // namespace

ExperimentSpec parse_experiment_text(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line is not key = value: " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "problem") {
            if (value == "sorting") spec.problem = ProblemKind::sorting;
            else if (value == "sssp") spec.problem = ProblemKind::sssp;
            else if (value == "eulerian") spec.problem = ProblemKind::eulerian;
            else throw std::invalid_argument("spec field problem: unknown value " + value);
        } else if (key == "measure") {
            spec.measure = sort_measure_from_string(value);
        } else if (key == "operator") {
            if (value == "vertex" || value == "edge") {
                spec.sssp_operator = sssp_operator_from_string(value);
            } else {
                spec.euler_operator = euler_operator_from_string(value);
            }
        } else if (key == "instance") {
            spec.instance = value;
        } else if (key == "size") {
            spec.size = static_cast<std::uint32_t>(parse_u64(value, key));
        } else if (key == "layers") {
            spec.layers = static_cast<std::uint32_t>(parse_u64(value, key));
        } else if (key == "algorithm") {
            if (value == "rls") spec.algorithm = MutationScheme::rls;
            else if (value == "ea") spec.algorithm = MutationScheme::ea;
            else throw std::invalid_argument("spec field algorithm: unknown value " + value);
        } else if (key == "mu") {
            spec.mu_list.clear();
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ',')) {
                spec.mu_list.push_back(static_cast<std::uint32_t>(parse_u64(trim(item), key)));
            }
        } else if (key == "tau") {
            spec.tau = value == "never" ? kNeverMigrate : parse_u64(value, key);
        } else if (key == "topology") {
            if (value == "ring") spec.topology = TopologyKind::ring;
            else if (value == "torus") spec.topology = TopologyKind::torus;
            else if (value == "complete") spec.topology = TopologyKind::complete;
            else if (value.rfind("custom:", 0) == 0) {
                spec.topology = TopologyKind::custom;
                spec.topology_file = value.substr(7);
            } else {
                throw std::invalid_argument("spec field topology: unknown value " + value);
            }
        } else if (key == "replications") {
            spec.replications = static_cast<std::uint32_t>(parse_u64(value, key));
        } else if (key == "seed") {
            spec.seed = parse_u64(value, key);
        } else if (key == "max_generations") {
            spec.max_generations = parse_u64(value, key);
        } else if (key == "output") {
            spec.output = value;
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    return spec;
}

ExperimentSpec parse_experiment_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment_text(text.str());
}

std::unique_ptr<ProblemDefinition> build_problem(const ExperimentSpec& spec) {
    switch (spec.problem) {
        case ProblemKind::sorting:
            return std::make_unique<SortingProblem>(spec.size, spec.measure, spec.algorithm);
        case ProblemKind::sssp: {
            if (spec.instance.rfind("file:", 0) == 0) {
                return std::make_unique<SsspProblem>(load_weighted_graph(spec.instance.substr(5)),
                                                     spec.sssp_operator);
            }
            const SsspInstance instance = spec.instance == "path"
                                              ? gen_path_graph(spec.size, 1.0)
                                              : gen_layered_instance(spec.size, spec.layers);
            return std::make_unique<SsspProblem>(instance.graph, spec.sssp_operator);
        }
        case ProblemKind::eulerian: {
            EulerGraph graph = spec.instance.rfind("file:", 0) == 0
                                   ? load_euler_graph(spec.instance.substr(5))
                                   : make_double_cycle(spec.size);
            return std::make_unique<EulerProblem>(std::move(graph), spec.euler_operator,
                                                  spec.algorithm);
        }
    }
    throw std::logic_error("unreachable");
}

Topology build_topology(const ExperimentSpec& spec, std::uint32_t mu) {
    switch (spec.topology) {
        case TopologyKind::ring: return make_ring(mu);
        case TopologyKind::torus: {
            const auto side = static_cast<std::uint32_t>(std::lround(std::sqrt(double(mu))));
            return make_torus(side, side);
        }
        case TopologyKind::complete: return make_complete(mu);
        case TopologyKind::custom: {
            Topology t = load_topology(spec.topology_file);
            if (t.mu() != mu) {
                throw std::invalid_argument(
                    "spec field topology: custom file island count does not match mu");
            }
            return t;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

std::string operator_name(const ExperimentSpec& spec) {
    switch (spec.problem) {
        case ProblemKind::sorting: return "-";
        case ProblemKind::sssp: return to_string(spec.sssp_operator);
        case ProblemKind::eulerian: return to_string(spec.euler_operator);
    }
    return "-";
}

std::string tau_name(std::uint64_t tau) {
    return tau == kNeverMigrate ? "never" : std::to_string(tau);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) {
        return jobs;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

std::uint64_t cell_seed(const ExperimentSpec& spec, std::uint32_t mu) {
    std::ostringstream key;
    key << to_string(spec.problem) << ";";
    if (spec.problem == ProblemKind::sorting) {
        key << to_string(spec.measure) << ";";
    } else {
        key << spec.instance << ";" << operator_name(spec) << ";";
    }
    key << "size=" << spec.size << ";layers=" << spec.layers << ";algo="
        << (spec.algorithm == MutationScheme::rls ? "rls" : "ea") << ";topology="
        << to_string(spec.topology) << ";mu=" << mu << ";tau=" << tau_name(spec.tau);
    return stream_key(*spec.seed, fnv1a64(key.str()), 0);
}

std::vector<RunRecord> run_replications(const ProblemDefinition& problem, const Topology& topology,
                                        std::uint32_t mu, std::uint64_t tau, std::uint64_t seed,
                                        std::uint32_t count, std::uint64_t max_generations,
                                        unsigned jobs) {
    const unsigned workers = std::min<unsigned>(resolve_jobs(jobs), count);
    std::vector<RunRecord> records(count);
    auto worker = [&](unsigned offset) {
        for (std::uint32_t r = offset; r < count; r += workers) {
            RunConfig config;
            config.mu = mu;
            config.tau = tau;
            config.topology = topology;
            config.seed = seed;
            config.replication = r;
            config.max_generations = max_generations;
            records[r] = run(config, problem);
        }
    };
    if (workers <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return records;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned jobs) {
    spec.validate();
    const auto problem = build_problem(spec);
    ExperimentResult result;
    for (std::uint32_t mu : spec.mu_list) {
        const Topology topology = build_topology(spec, mu);
        const std::uint64_t seed = cell_seed(spec, mu);
        const auto records = run_replications(*problem, topology, mu, spec.tau, seed,
                                              spec.replications, spec.max_generations, jobs);
        std::vector<double> times;
        std::size_t cap_hits = 0;
        for (std::uint32_t r = 0; r < spec.replications; ++r) {
            const RunRecord& record = records[r];
            ResultRow row;
            row.problem = to_string(spec.problem);
            row.measure = spec.problem == ProblemKind::sorting ? to_string(spec.measure) : "-";
            row.n_or_m = spec.size;
            row.topology = to_string(spec.topology);
            row.mu = mu;
            row.tau = tau_name(spec.tau);
            row.op = operator_name(spec);
            row.replication = r;
            row.seed = seed;
            row.parallel_time = record.parallel_time;
            row.capped = record.hit_cap;
            result.rows.push_back(std::move(row));
            if (record.hit_cap) {
                ++cap_hits;
            } else {
                times.push_back(static_cast<double>(record.parallel_time));
            }
        }
        result.cells.push_back({mu, summarize(times, cap_hits)});
    }
    return result;
}

DecisionExperimentResult probe_decision_experiment(std::uint32_t m, std::uint32_t runs,
                                                   std::uint64_t seed, unsigned jobs) {
    if (runs == 0) {
        throw std::invalid_argument("probe_decision_experiment: runs must be >= 1");
    }
    const EulerProblem problem(make_double_cycle(m), EulerOperator::unrestricted,
                               MutationScheme::rls);
    const EulerGraph& graph = problem.graph();
    const Topology single = make_ring(1);

    const unsigned workers = std::min<unsigned>(resolve_jobs(jobs), runs);
    std::vector<std::string> tags(runs);
    auto worker = [&](unsigned offset) {
        for (std::uint32_t r = offset; r < runs; r += workers) {
            RunConfig config;
            config.mu = 1;
            config.tau = kNeverMigrate;
            config.topology = single;
            config.seed = seed;
            config.replication = r;
            config.max_generations = 10'000'000;
            config.make_observer = [&graph](std::uint32_t mu) {
                return make_decision_observer(graph, mu, true);
            };
            const RunRecord record = run(config, problem);
            tags[r] = record.probes.empty() ? "" : record.probes.front().tag;
        }
    };
    if (workers <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    DecisionExperimentResult result;
    for (const auto& tag : tags) {
        if (tag == kDecisionOppositeCycle) {
            ++result.opposite_cycle;
        } else if (tag == kDecisionSameCycle) {
            ++result.same_cycle;
        } else if (tag == kDecisionNotApplicable) {
            ++result.not_applicable;
        } else {
            ++result.undecided;
        }
    }
    const std::uint32_t applicable = result.opposite_cycle + result.same_cycle;
    result.frequency = applicable == 0
                           ? 0.0
                           : static_cast<double>(result.opposite_cycle) / applicable;
    return result;
}

std::vector<SpeedupRow> speedup_table(const ExperimentResult& result) {
    const CellSummary* baseline = nullptr;
    for (const auto& cell : result.cells) {
        if (cell.mu == 1) {
            baseline = &cell;
            break;
        }
    }
    if (baseline == nullptr || baseline->stats.count == 0) {
        throw std::invalid_argument("speedup_table: needs a mu=1 cell with uncapped runs");
    }
    std::vector<SpeedupRow> rows;
    for (const auto& cell : result.cells) {
        if (cell.stats.count == 0) {
            continue;
        }
        SpeedupRow row;
        row.mu = cell.mu;
        row.speedup = baseline->stats.mean / cell.stats.mean;
        row.efficiency = row.speedup / static_cast<double>(cell.mu);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace isle
