#include "isle/engine.hpp"

#include <stdexcept>
#include <thread>

namespace isle {

std::vector<IslandState> migration_step(const std::vector<IslandState>& islands,
                                        const Topology& topology,
                                        const ProblemDefinition& problem) {
    if (islands.size() != topology.mu()) {
        throw std::invalid_argument("migration_step: island count does not match topology");
    }
    std::vector<IslandState> next = islands;
    for (std::uint32_t v = 0; v < topology.mu(); ++v) {
        const auto senders = topology.in_neighbors(v);
        if (senders.empty()) {
            continue;
        }
        std::uint32_t best = senders.front();
        for (std::uint32_t u : senders.subspan(1)) {
            // Strict comparison keeps the lowest-index sender on ties.
            if (problem.better_for_migration(islands[u].fitness, islands[best].fitness)) {
                best = u;
            }
        }
        if (problem.accept_immigrant(islands[v].fitness, islands[best].fitness)) {
            next[v] = islands[best];
        }
    }
    return next;
}

namespace {

void validate(const RunConfig& config) {
    if (config.mu == 0) {
        throw std::invalid_argument("run: mu must be positive");
    }
    if (config.topology.mu() != config.mu) {
        throw std::invalid_argument("run: topology island count does not match mu");
    }
    if (config.tau == 0) {
        throw std::invalid_argument("run: tau must be >= 1 (or never)");
    }
    if (config.max_generations == 0) {
        throw std::invalid_argument("run: max_generations must be positive");
    }
}

std::vector<FitnessValue> snapshot_fitness(const std::vector<IslandState>& islands) {
    std::vector<FitnessValue> out;
    out.reserve(islands.size());
    for (const auto& island : islands) {
        out.push_back(island.fitness);
    }
    return out;
}

}  // namespace

RunRecord run(const RunConfig& config, const ProblemDefinition& problem) {
    validate(config);
    const std::uint32_t mu = config.mu;

    std::vector<Rng> rngs;
    rngs.reserve(mu);
    for (std::uint32_t i = 0; i < mu; ++i) {
        rngs.push_back(derive_island_rng(config.seed, i, config.replication));
    }

    std::vector<IslandState> islands(mu);
    for (std::uint32_t i = 0; i < mu; ++i) {
        islands[i].genotype = problem.sample_initial(rngs[i]);
        islands[i].fitness = problem.fitness(islands[i].genotype);
    }

    RunRecord record;
    record.seed = config.seed;
    if (config.record_trajectory) {
        record.initial_fitness = snapshot_fitness(islands);
    }

    std::unique_ptr<RunObserver> observer;
    if (config.make_observer) {
        observer = config.make_observer(mu);
    }
    if (observer) {
        for (std::uint32_t i = 0; i < mu; ++i) {
            observer->observe(0, i, islands[i].genotype, islands[i].fitness, record.probes);
        }
    }

    // Islands own disjoint state and private rng streams, so splitting a
    // generation across workers cannot change the outcome.
    auto vary_range = [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t i = lo; i < hi; ++i) {
            Genotype candidate = problem.mutate(islands[i].genotype, rngs[i]);
            FitnessValue fit = problem.fitness(candidate);
            if (problem.accept_offspring(islands[i].fitness, fit)) {
                islands[i].genotype = std::move(candidate);
                islands[i].fitness = std::move(fit);
            }
        }
    };

    const std::uint32_t workers = std::max<std::uint32_t>(1, std::min(config.workers, mu));

    bool done = false;
    for (std::uint64_t t = 0; t < config.max_generations && !done; ++t) {
        if (workers == 1) {
            vary_range(0, mu);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            const std::uint32_t chunk = (mu + workers - 1) / workers;
            for (std::uint32_t w = 0; w < workers; ++w) {
                const std::uint32_t lo = w * chunk;
                const std::uint32_t hi = std::min(mu, lo + chunk);
                if (lo < hi) {
                    pool.emplace_back(vary_range, lo, hi);
                }
            }
            for (auto& worker : pool) {
                worker.join();
            }
        }

        GenerationTrace trace;
        if (config.record_trajectory) {
            trace.post_variation = snapshot_fitness(islands);
        }

        const bool migrate = config.tau != kNeverMigrate && t > 0 && t % config.tau == 0;
        if (migrate) {
            islands = migration_step(islands, config.topology, problem);
        }
        if (config.record_trajectory) {
            trace.migrated = migrate;
            trace.post_migration = snapshot_fitness(islands);
            record.trajectory.push_back(std::move(trace));
        }

        if (observer) {
            for (std::uint32_t i = 0; i < mu; ++i) {
                observer->observe(t + 1, i, islands[i].genotype, islands[i].fitness,
                                  record.probes);
            }
        }

        for (const auto& island : islands) {
            if (problem.is_optimal_value(island.fitness)) {
                record.parallel_time = t + 1;
                record.termination = Termination::optimum;
                done = true;
                break;
            }
        }
        if (!done && observer && observer->finished()) {
            record.parallel_time = t + 1;
            record.termination = Termination::observer;
            done = true;
        }
    }

    if (!done) {
        record.hit_cap = true;
        record.parallel_time = kInfiniteTime;
        record.termination = Termination::cap;
    }

    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < mu; ++i) {
        if (problem.better_for_migration(islands[i].fitness, islands[best].fitness)) {
            best = i;
        }
    }
    record.final_best_fitness = islands[best].fitness;
    record.final_best_genotype = islands[best].genotype;
    return record;
}

}  // namespace isle
