#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isle/engine.hpp"
#include "isle/eulerian.hpp"
#include "isle/shortest_paths.hpp"
#include "isle/sorting.hpp"
#include "isle/stats.hpp"
#include "isle/topology.hpp"

namespace isle {

enum class ProblemKind { sorting, sssp, eulerian };

const char* to_string(ProblemKind kind);

// One replicated experiment: a problem instance swept over a list of island
// counts. Every derived quantity is a pure function of this spec (the master
// seed included).
struct ExperimentSpec {
    ProblemKind problem = ProblemKind::sorting;
    SortMeasure measure = SortMeasure::ham;          // sorting
    SsspOperator sssp_operator = SsspOperator::vertex;
    EulerOperator euler_operator = EulerOperator::unrestricted;
    std::string instance = "";   // path | layered | double-cycle | file:PATH
    std::uint32_t size = 0;      // n (sorting, sssp) or m (eulerian)
    std::uint32_t layers = 1;    // layered instance only
    MutationScheme algorithm = MutationScheme::ea;
    std::vector<std::uint32_t> mu_list;
    std::uint64_t tau = 1;       // kNeverMigrate spelled `never` in configs
    TopologyKind topology = TopologyKind::ring;
    std::string topology_file;   // custom topology
    std::uint32_t replications = 1;
    std::optional<std::uint64_t> seed;  // mandatory; no wall-clock fallback
    std::uint64_t max_generations = kDefaultMaxGenerations;
    std::string output;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// `key = value` lines; `#` starts a comment. Unknown keys are rejected.
ExperimentSpec parse_experiment_file(const std::filesystem::path& path);
ExperimentSpec parse_experiment_text(const std::string& text);

// Problem instance shared by all cells of a spec.
std::unique_ptr<ProblemDefinition> build_problem(const ExperimentSpec& spec);

Topology build_topology(const ExperimentSpec& spec, std::uint32_t mu);

// Cell seed: keyed by the cell's content (problem, instance, size, mu, tau,
// topology, operator, algorithm), never by its position in the mu list.
std::uint64_t cell_seed(const ExperimentSpec& spec, std::uint32_t mu);

struct ResultRow {
    std::string problem;
    std::string measure;       // "-" when not applicable
    std::uint32_t n_or_m = 0;
    std::string topology;
    std::uint32_t mu = 0;
    std::string tau;           // number or "never"
    std::string op;            // "-" when not applicable
    std::uint32_t replication = 0;
    std::uint64_t seed = 0;
    std::uint64_t parallel_time = 0;  // kInfiniteTime when capped
    bool capped = false;

    bool operator==(const ResultRow&) const = default;
};

struct CellSummary {
    std::uint32_t mu = 0;
    SummaryStats stats;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;        // replication-major, cells in mu order
    std::vector<CellSummary> cells;
};

// Runs `replications` seeded runs for every mu. Replications execute
// concurrently on up to `jobs` threads; aggregation is keyed by replication
// index, so the output never depends on the number of workers.
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned jobs = 0);

// Raw per-run parallel times of `count` runs of one cell configuration.
std::vector<RunRecord> run_replications(const ProblemDefinition& problem, const Topology& topology,
                                        std::uint32_t mu, std::uint64_t tau, std::uint64_t seed,
                                        std::uint32_t count, std::uint64_t max_generations,
                                        unsigned jobs = 0);

struct SpeedupRow {
    std::uint32_t mu = 0;
    double speedup = 0.0;
    double efficiency = 0.0;
};

// speedup(mu) = mean T(1) / mean T(mu); efficiency = speedup / mu.
// Requires a mu = 1 cell with at least one uncapped run.
std::vector<SpeedupRow> speedup_table(const ExperimentResult& result);

// Single-island randomized local search on the two-cycle instance, each run
// stopped at its first decision event at the shared vertex. frequency is the
// share of opposite-cycle decisions among applicable (decided, non-straddle)
// runs.
struct DecisionExperimentResult {
    std::uint32_t opposite_cycle = 0;
    std::uint32_t same_cycle = 0;
    std::uint32_t not_applicable = 0;
    std::uint32_t undecided = 0;
    double frequency = 0.0;
};

DecisionExperimentResult probe_decision_experiment(std::uint32_t m, std::uint32_t runs,
                                                   std::uint64_t seed, unsigned jobs = 0);

}  // namespace isle
