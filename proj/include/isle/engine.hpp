#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "isle/fitness.hpp"
#include "isle/rng.hpp"
#include "isle/topology.hpp"

namespace isle {

// All problems in this project encode individuals as integer arrays
// (permutations, predecessor vectors, edge orders).
using Genotype = std::vector<std::int32_t>;

// Mutation strength: rls applies exactly one elementary operation per
// generation, ea applies Poisson(1) + 1 of them.
enum class MutationScheme { rls, ea };

// Capability bundle a problem hands to the engine. Implementations must be
// immutable after construction so one instance can serve concurrent runs.
class ProblemDefinition {
public:
    virtual ~ProblemDefinition() = default;

    virtual Genotype sample_initial(Rng& rng) const = 0;
    virtual Genotype mutate(const Genotype& g, Rng& rng) const = 0;
    virtual FitnessValue fitness(const Genotype& g) const = 0;

    // Optimality is fitness-determined for every problem here.
    virtual bool is_optimal_value(const FitnessValue& f) const = 0;
    bool is_optimal(const Genotype& g) const { return is_optimal_value(fitness(g)); }

    virtual bool accept_offspring(const FitnessValue& current, const FitnessValue& candidate) const {
        return isle::accept_offspring(current, candidate);
    }
    virtual bool accept_immigrant(const FitnessValue& current, const FitnessValue& candidate) const {
        return isle::accept_immigrant(current, candidate);
    }
    virtual bool better_for_migration(const FitnessValue& a, const FitnessValue& b) const {
        return isle::better_for_migration(a, b);
    }
};

struct IslandState {
    Genotype genotype;
    FitnessValue fitness;

    bool operator==(const IslandState&) const = default;
};

struct ProbeEvent {
    std::uint64_t generation = 0;  // completed generations when the event fired
    std::uint32_t island = 0;
    std::string tag;
    std::string payload;

    bool operator==(const ProbeEvent&) const = default;
};

// Watches accepted per-island states. Called once per island for the initial
// population (generation 0) and once per island at the end of every
// generation, in ascending island order.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void observe(std::uint64_t generations_done, std::uint32_t island,
                         const Genotype& genotype, const FitnessValue& fitness,
                         std::vector<ProbeEvent>& events) = 0;
    // Once true the run stops at the end of the current generation.
    virtual bool finished() const { return false; }
};

inline constexpr std::uint64_t kNeverMigrate = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kInfiniteTime = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultMaxGenerations = 1'000'000'000;

struct RunConfig {
    std::uint32_t mu = 1;
    std::uint64_t tau = 1;  // kNeverMigrate disables migration entirely
    Topology topology = make_ring(1);
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::uint64_t max_generations = kDefaultMaxGenerations;
    std::uint32_t workers = 1;
    bool record_trajectory = false;
    std::function<std::unique_ptr<RunObserver>(std::uint32_t mu)> make_observer;
};

struct GenerationTrace {
    std::vector<FitnessValue> post_variation;
    bool migrated = false;
    std::vector<FitnessValue> post_migration;  // equals post_variation when !migrated

    bool operator==(const GenerationTrace&) const = default;
};

enum class Termination { optimum, cap, observer };

struct RunRecord {
    // Completed generations until some island was optimal (1-based count).
    // kInfiniteTime when the cap was hit; generations executed when an
    // observer stopped the run early.
    std::uint64_t parallel_time = 0;
    bool hit_cap = false;
    Termination termination = Termination::optimum;
    std::uint64_t seed = 0;
    std::vector<ProbeEvent> probes;
    FitnessValue final_best_fitness;
    Genotype final_best_genotype;
    std::vector<FitnessValue> initial_fitness;   // only when record_trajectory
    std::vector<GenerationTrace> trajectory;     // only when record_trajectory

    bool operator==(const RunRecord&) const = default;
};

// One migration exchange. Double-buffered: every outgoing migrant is a
// snapshot of the post-variation states; each island then takes the best
// immigrant (ties broken by lowest sending island) iff strictly better.
std::vector<IslandState> migration_step(const std::vector<IslandState>& islands,
                                        const Topology& topology,
                                        const ProblemDefinition& problem);

// Executes the island model: per generation every island mutates its single
// resident and keeps the offspring if not worse; at generations t with
// t mod tau == 0 and t > 0 a migration step follows. The record is a pure
// function of the config; worker count never changes it.
RunRecord run(const RunConfig& config, const ProblemDefinition& problem);

}  // namespace isle
