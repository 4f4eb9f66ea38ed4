#include "isle/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "isle/bounds.hpp"
#include "isle/emit.hpp"
#include "isle/engine.hpp"
#include "isle/eulerian.hpp"
#include "isle/experiment.hpp"
#include "isle/shortest_paths.hpp"
#include "isle/sorting.hpp"
#include "isle/stats.hpp"

namespace isle {

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool condition, const std::string& message) {
        if (!condition) {
            pass = false;
            detail << "FAILED[" << message << "] ";
        }
    }
};

std::string fmt(double v, int precision = 4) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

// ---------------------------------------------------------------- criterion 1

CriterionResult criterion_rowe(unsigned) {
    Check check;
    constexpr double kRelTol = 1e-12;
    int cells = 0;
    double worst_margin = -1e300;
    for (int si = 1; si <= 100; ++si) {
        const double s = si / 100.0;
        for (std::uint32_t mu = 1; mu <= 64; ++mu) {
            const RoweBound bound = rowe_inequality(s, mu);
            check.expect(bound.lhs <= bound.rhs * (1.0 + kRelTol),
                         "s=" + fmt(s) + " mu=" + std::to_string(mu));
            worst_margin = std::max(worst_margin, bound.lhs - bound.rhs);
            ++cells;
        }
    }
    check.detail << cells << " grid cells, max(lhs-rhs)=" << fmt(worst_margin, 3);
    return {"rowe", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 2

CriterionResult criterion_bounds(unsigned) {
    Check check;
    const double ring = bound_ring(LevelProbabilities{{0.25}}, 2).value;
    const double torus = bound_torus(LevelProbabilities{{0.125}}, 2).value;
    const double complete = bound_complete(LevelProbabilities{{0.5, 0.25}}, 2).value;
    const double h3 = harmonic(3);
    check.expect(ring == 6.0, "bound_ring((1/4),2)=" + fmt(ring));
    check.expect(torus == 10.0, "bound_torus((1/8),2)=" + fmt(torus));
    check.expect(complete == 6.0, "bound_complete((1/2,1/4),2)=" + fmt(complete));
    check.expect(std::fabs(h3 - 11.0 / 6.0) <= 1e-12 * (11.0 / 6.0), "harmonic(3)=" + fmt(h3, 15));
    check.detail << "ring=" << ring << " torus=" << torus << " complete=" << complete
                 << " H(3)=" << fmt(h3, 12);
    return {"bounds", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 3

CriterionResult criterion_decision(unsigned jobs) {
    Check check;
    const auto result = probe_decision_experiment(24, 2000, 0xDEC15107, jobs);
    check.expect(result.undecided == 0, "undecided runs");
    check.expect(result.frequency >= 0.61 && result.frequency <= 0.72,
                 "frequency=" + fmt(result.frequency));
    check.detail << "opposite=" << result.opposite_cycle << " same=" << result.same_cycle
                 << " n/a=" << result.not_applicable << " frequency="
                 << fmt(result.frequency);
    return {"decision", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 4

double all_same_cycle_fraction(std::uint32_t m, std::uint32_t mu, std::uint32_t runs,
                               std::uint64_t seed, unsigned jobs) {
    const EulerProblem problem(make_double_cycle(m), EulerOperator::unrestricted,
                               MutationScheme::rls);
    const EulerGraph& graph = problem.graph();
    const Topology topology = mu == 1 ? make_ring(1) : make_complete(mu);
    const unsigned workers = std::max(1u, jobs);
    std::vector<std::uint32_t> all_same(runs, 0);
    auto worker = [&](unsigned offset) {
        for (std::uint32_t r = offset; r < runs; r += workers) {
            RunConfig config;
            config.mu = mu;
            config.tau = kNeverMigrate;  // islands never interact
            config.topology = topology;
            config.seed = seed;
            config.replication = r;
            config.max_generations = 10'000'000;
            config.make_observer = [&graph](std::uint32_t islands) {
                return make_decision_observer(graph, islands, true);
            };
            const RunRecord record = run(config, problem);
            std::uint32_t same = 0;
            for (const auto& event : record.probes) {
                if (event.tag == kDecisionSameCycle) {
                    ++same;
                }
            }
            all_same[r] = same == mu ? 1 : 0;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker, w);
    }
    worker(0);
    for (auto& t : pool) {
        t.join();
    }
    std::uint64_t count = 0;
    for (std::uint32_t v : all_same) {
        count += v;
    }
    return static_cast<double>(count) / runs;
}

CriterionResult criterion_decay(unsigned jobs) {
    Check check;
    constexpr std::uint32_t kRuns = 3000;
    const double frac1 = all_same_cycle_fraction(16, 1, kRuns, 0xDECA11, jobs);
    const double frac2 = all_same_cycle_fraction(16, 2, kRuns, 0xDECA12, jobs);
    const double frac3 = all_same_cycle_fraction(16, 3, kRuns, 0xDECA13, jobs);
    check.expect(frac1 > 0.0, "frac(1) must be positive");
    const double ratio2 = frac2 / (frac1 * frac1);
    const double ratio3 = frac3 / (frac1 * frac1 * frac1);
    check.expect(ratio2 >= 0.5 && ratio2 <= 2.0, "ratio(2)=" + fmt(ratio2));
    check.expect(ratio3 >= 0.5 && ratio3 <= 2.0, "ratio(3)=" + fmt(ratio3));
    check.detail << "frac=" << fmt(frac1) << "/" << fmt(frac2) << "/" << fmt(frac3)
                 << " ratios=" << fmt(ratio2) << "," << fmt(ratio3);
    return {"decay", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 5

std::vector<double> uncapped_times(const std::vector<RunRecord>& records, Check& check,
                                   const std::string& label) {
    std::vector<double> times;
    for (const auto& record : records) {
        if (record.hit_cap) {
            check.expect(false, label + ": capped run");
        } else {
            times.push_back(static_cast<double>(record.parallel_time));
        }
    }
    return times;
}

CriterionResult criterion_regimes(unsigned jobs) {
    Check check;
    constexpr std::uint32_t kM = 16, kMu = 8, kRuns = 200;
    const EulerProblem problem(make_double_cycle(kM), EulerOperator::unrestricted,
                               MutationScheme::rls);
    const Topology ring = make_ring(kMu);
    check.expect(classify_migration_regime(kM, 1, ring.diameter(), kMu, false) ==
                     MigrationRegime::frequent,
                 "tau=1 classifies as frequent");
    check.expect(classify_migration_regime(kM, 4096, ring.diameter(), kMu, false) ==
                     MigrationRegime::rare,
                 "tau=4096 classifies as rare");

    const auto frequent = run_replications(problem, ring, kMu, 1, 0x5E91F1, kRuns,
                                           kDefaultMaxGenerations, jobs);
    const auto rare = run_replications(problem, ring, kMu, 4096, 0x5E91F2, kRuns,
                                       kDefaultMaxGenerations, jobs);
    const auto tf = uncapped_times(frequent, check, "frequent");
    const auto tr = uncapped_times(rare, check, "rare");
    const SummaryStats sf = summarize(tf, 0);
    const SummaryStats sr = summarize(tr, 0);
    const WelchResult welch = welch_t_test(tf, tr);
    check.expect(sr.mean < sf.mean, "mean(rare) < mean(frequent)");
    check.expect(welch.p_greater < 0.01, "welch p=" + fmt(welch.p_greater, 6));
    check.detail << "mean(frequent)=" << fmt(sf.mean, 6) << " mean(rare)=" << fmt(sr.mean, 6)
                 << " t=" << fmt(welch.t) << " p=" << fmt(welch.p_greater, 3);
    return {"regimes", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 6

CriterionResult criterion_operators(unsigned jobs) {
    Check check;
    constexpr std::uint32_t kRuns = 200;
    const Topology single = make_ring(1);
    std::vector<double> ratios;
    std::ostringstream means;
    for (std::uint32_t m : {12u, 24u, 48u}) {
        const EulerProblem sym(make_double_cycle(m), EulerOperator::symmetric,
                               MutationScheme::rls);
        const EulerProblem asym(make_double_cycle(m), EulerOperator::asymmetric,
                                MutationScheme::rls);
        const auto rs = run_replications(sym, single, 1, kNeverMigrate, 0xA5E0 + m, kRuns,
                                         kDefaultMaxGenerations, jobs);
        const auto ra = run_replications(asym, single, 1, kNeverMigrate, 0xA5E1 + m, kRuns,
                                         kDefaultMaxGenerations, jobs);
        const double mean_sym = summarize(uncapped_times(rs, check, "sym"), 0).mean;
        const double mean_asym = summarize(uncapped_times(ra, check, "asym"), 0).mean;
        ratios.push_back(mean_sym / mean_asym);
        means << " m=" << m << ":" << fmt(mean_sym, 5) << "/" << fmt(mean_asym, 5);
    }
    check.expect(ratios[0] < ratios[1] && ratios[1] < ratios[2], "ratios strictly increasing");
    check.expect(ratios[2] > 2.0, "ratio(m=48)=" + fmt(ratios[2]));
    check.detail << "sym/asym means:" << means.str() << "; ratios=" << fmt(ratios[0]) << ","
                 << fmt(ratios[1]) << "," << fmt(ratios[2]);
    return {"operators", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 7

CriterionResult criterion_sorting_speedup(unsigned jobs) {
    Check check;
    ExperimentSpec spec;
    spec.problem = ProblemKind::sorting;
    spec.measure = SortMeasure::ham;
    spec.size = 24;
    spec.algorithm = MutationScheme::ea;
    spec.topology = TopologyKind::complete;
    spec.mu_list = {1, 4, 16};
    spec.tau = 1;
    spec.replications = 300;
    spec.seed = 0x50B7ED;
    const ExperimentResult result = run_experiment(spec, jobs);
    for (const auto& cell : result.cells) {
        check.expect(cell.stats.cap_hits == 0, "capped runs at mu=" + std::to_string(cell.mu));
    }
    const double m1 = result.cells[0].stats.mean;
    const double m4 = result.cells[1].stats.mean;
    const double m16 = result.cells[2].stats.mean;
    check.expect(m1 > m4 && m4 > m16, "means strictly decreasing");
    const auto speedups = speedup_table(result);
    double efficiency4 = 0.0;
    for (const auto& row : speedups) {
        if (row.mu == 4) {
            efficiency4 = row.efficiency;
        }
    }
    check.expect(efficiency4 >= 0.3, "efficiency(mu=4)=" + fmt(efficiency4));
    check.detail << "means=" << fmt(m1, 6) << "/" << fmt(m4, 6) << "/" << fmt(m16, 6)
                 << " efficiency(4)=" << fmt(efficiency4);
    return {"sorting-speedup", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 8

CriterionResult criterion_sssp_operators(unsigned jobs) {
    Check check;
    constexpr std::uint32_t kRuns = 200;
    const SsspInstance instance = gen_path_graph(32, 1.0);
    const SsspProblem vertex(instance.graph, SsspOperator::vertex);
    const SsspProblem edge(instance.graph, SsspOperator::edge);
    const Topology single = make_ring(1);
    const auto rv = run_replications(vertex, single, 1, kNeverMigrate, 0x55B1, kRuns,
                                     kDefaultMaxGenerations, jobs);
    const auto re = run_replications(edge, single, 1, kNeverMigrate, 0x55B2, kRuns,
                                     kDefaultMaxGenerations, jobs);
    const double mean_vertex = summarize(uncapped_times(rv, check, "vertex"), 0).mean;
    const double mean_edge = summarize(uncapped_times(re, check, "edge"), 0).mean;
    check.expect(mean_edge < mean_vertex, "mean(edge) < mean(vertex)");
    const double ratio = mean_vertex / mean_edge;
    check.expect(ratio >= 5.0, "ratio=" + fmt(ratio));
    check.detail << "mean(vertex)=" << fmt(mean_vertex, 6) << " mean(edge)=" << fmt(mean_edge, 6)
                 << " ratio=" << fmt(ratio);
    return {"sssp-operators", check.pass, check.detail.str(), 0.0};
}

// ---------------------------------------------------------------- criterion 9

CriterionResult criterion_rw_tails(unsigned) {
    Check check;
    constexpr std::uint32_t kTrials = 100000;
    Rng rng(0x1E44A1);
    const auto samples8 = rw_hitting_simulate(8, kTrials, rng);
    for (std::uint64_t t : {16u, 32u, 64u, 128u, 256u}) {
        std::uint64_t hits = 0;
        for (std::uint64_t sample : samples8) {
            if (sample <= t) {
                ++hits;
            }
        }
        const double empirical = static_cast<double>(hits) / kTrials;
        const double bound = rw_hitting_cumulative_bound_clipped(8, t);
        const double sigma = std::sqrt(bound * (1.0 - bound) / kTrials);
        check.expect(empirical <= bound + 3.0 * sigma,
                     "t=" + std::to_string(t) + " empirical=" + fmt(empirical));
        check.detail << "P(T<=" << t << ")=" << fmt(empirical, 3) << "<=" << fmt(bound, 3) << " ";
    }
    const auto samples2 = rw_hitting_simulate(2, kTrials, rng);
    double mean2 = 0.0;
    for (std::uint64_t sample : samples2) {
        mean2 += static_cast<double>(sample);
    }
    mean2 /= kTrials;
    check.expect(mean2 >= 3.9 && mean2 <= 4.1, "mean T(2)=" + fmt(mean2));
    check.detail << "mean(T(2))=" << fmt(mean2);
    return {"rw-tails", check.pass, check.detail.str(), 0.0};
}

// --------------------------------------------------------------- criterion 10

CriterionResult criterion_inv_flat(unsigned) {
    Check check;
    std::vector<int> gains;
    for (std::uint32_t n : {8u, 12u, 16u}) {
        gains.push_back(max_single_op_inv_gain(worst_inv_permutation(n)));
    }
    check.expect(gains[0] == gains[1] && gains[1] == gains[2],
                 "gains=" + std::to_string(gains[0]) + "," + std::to_string(gains[1]) + "," +
                     std::to_string(gains[2]));
    check.detail << "max single-op gain=" << gains[0] << "," << gains[1] << "," << gains[2]
                 << " for n=8,12,16";
    return {"inv-flat", check.pass, check.detail.str(), 0.0};
}

// --------------------------------------------------------------- criterion 11

// Exchange-move distance to the identity, by BFS over all of S_n.
std::map<std::vector<std::int32_t>, std::uint32_t> exchange_distances(std::uint32_t n) {
    std::map<std::vector<std::int32_t>, std::uint32_t> dist;
    const Permutation id = identity_permutation(n);
    dist[id.entries] = 0;
    std::queue<Permutation> queue;
    queue.push(id);
    while (!queue.empty()) {
        const Permutation p = queue.front();
        queue.pop();
        const std::uint32_t d = dist[p.entries];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                Permutation q = exchange(p, i, j);
                if (dist.find(q.entries) == dist.end()) {
                    dist[q.entries] = d + 1;
                    queue.push(q);
                }
            }
        }
    }
    return dist;
}

// Independent distance oracle: relax all edges n-1 times.
DistanceVector bellman_ford(const WeightedGraph& g) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n(), kInf);
    dist[g.source()] = 0.0;
    for (std::uint32_t round = 0; round + 1 < g.n(); ++round) {
        for (const auto& e : g.edges()) {
            if (dist[e.u] + e.weight < dist[e.v]) {
                dist[e.v] = dist[e.u] + e.weight;
            }
            if (dist[e.v] + e.weight < dist[e.u]) {
                dist[e.u] = dist[e.v] + e.weight;
            }
        }
    }
    dist.resize(g.n() - 1);
    return DistanceVector{std::move(dist)};
}

WeightedGraph random_connected_graph(std::uint32_t n, Rng& rng) {
    std::vector<WeightedGraph::Edge> edges;
    // Random attachment tree, then a few extra edges.
    for (std::uint32_t v = 1; v < n; ++v) {
        const std::uint32_t u = static_cast<std::uint32_t>(rng.below(v));
        edges.push_back({u, v, static_cast<double>(1 + rng.below(9))});
    }
    const std::uint32_t extras = static_cast<std::uint32_t>(rng.below(n));
    for (std::uint32_t k = 0; k < extras; ++k) {
        const std::uint32_t u = static_cast<std::uint32_t>(rng.below(n));
        std::uint32_t v = static_cast<std::uint32_t>(rng.below(n - 1));
        if (v >= u) {
            ++v;
        }
        edges.push_back({u, v, static_cast<double>(1 + rng.below(9))});
    }
    return WeightedGraph(n, std::move(edges));
}

// Predecessor tree read off the oracle distances (tight edges only).
PredecessorVector oracle_tree(const WeightedGraph& g, const DistanceVector& dist) {
    PredecessorVector pred(g.n() - 1, 0);
    for (std::uint32_t v = 0; v + 1 < g.n(); ++v) {
        for (auto [u, w] : g.neighbors(v)) {
            const double du = u == g.source() ? 0.0 : dist.values[u];
            if (du + w == dist.values[v]) {
                pred[v] = static_cast<std::int32_t>(u);
                break;
            }
        }
    }
    return pred;
}

// Random closed walk; its edge multiset is Eulerian by construction.
EulerGraph random_euler_graph(Rng& rng) {
    const std::uint32_t m = 6 + static_cast<std::uint32_t>(rng.below(7));  // 6..12
    const std::uint32_t k = 3 + static_cast<std::uint32_t>(rng.below(4));  // 3..6 vertices
    std::vector<std::uint32_t> walk(m);
    walk[0] = 0;
    for (std::uint32_t t = 1; t < m; ++t) {
        for (;;) {
            const std::uint32_t v = static_cast<std::uint32_t>(rng.below(k));
            if (v == walk[t - 1]) {
                continue;
            }
            if (t == m - 1 && v == walk[0]) {
                continue;
            }
            walk[t] = v;
            break;
        }
    }
    // Relabel the vertices actually used.
    std::vector<std::int32_t> label(k, -1);
    std::uint32_t next = 0;
    for (std::uint32_t v : walk) {
        if (label[v] < 0) {
            label[v] = static_cast<std::int32_t>(next++);
        }
    }
    std::vector<EulerGraph::Edge> edges;
    for (std::uint32_t t = 0; t < m; ++t) {
        edges.push_back({static_cast<std::uint32_t>(label[walk[t]]),
                         static_cast<std::uint32_t>(label[walk[(t + 1) % m]]), -1});
    }
    return EulerGraph(next, std::move(edges));
}

CriterionResult criterion_oracles(unsigned jobs) {
    Check check;

    // exc equals the exchange-move BFS distance on all of S_6.
    const auto distances = exchange_distances(6);
    check.expect(distances.size() == 720, "S_6 has 720 elements");
    for (const auto& [entries, d] : distances) {
        if (exc(Permutation{entries}) != d) {
            check.expect(false, "exc mismatch");
            break;
        }
    }
    check.detail << "exc==bfs on 720 permutations; ";

    // Optimality test agrees with an independent label-correcting oracle on
    // random small instances.
    Rng rng(0x04AC1E);
    int graphs = 0, vectors = 0;
    for (int g = 0; g < 50; ++g) {
        const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.below(4));  // 4..7
        const WeightedGraph graph = random_connected_graph(n, rng);
        const DistanceVector bf = bellman_ford(graph);
        const DistanceVector oracle = shortest_path_oracle(graph);
        check.expect(bf.values == oracle.values, "oracle != bellman-ford");
        check.expect(is_optimal_sssp(oracle_tree(graph, bf), graph),
                     "tight-edge tree not optimal");
        for (int k = 0; k < 20; ++k) {
            PredecessorVector x(n - 1);
            for (std::uint32_t i = 0; i + 1 < n; ++i) {
                std::uint32_t pick = static_cast<std::uint32_t>(rng.below(n - 1));
                if (pick >= i) {
                    ++pick;
                }
                x[i] = static_cast<std::int32_t>(pick);
            }
            const bool via_impl = is_optimal_sssp(x, graph);
            const bool via_bf = eval_distances(x, graph).values == bf.values;
            check.expect(via_impl == via_bf, "is_optimal_sssp disagrees with oracle");
            ++vectors;
        }
        ++graphs;
    }
    check.detail << graphs << " random graphs, " << vectors << " vectors; ";

    // Every optimum found by local search on random Eulerian graphs closes.
    const Topology single = make_ring(1);
    constexpr std::uint32_t kOptima = 1000;
    std::vector<std::uint8_t> closed(kOptima, 0);
    const unsigned workers = std::max(1u, jobs);
    auto worker = [&](unsigned offset) {
        for (std::uint32_t trial = offset; trial < kOptima; trial += workers) {
            Rng gen_rng(stream_key(0xE81E5, trial, 0));
            const EulerGraph graph = random_euler_graph(gen_rng);
            const EulerProblem problem(graph, EulerOperator::unrestricted, MutationScheme::rls);
            RunConfig config;
            config.mu = 1;
            config.tau = kNeverMigrate;
            config.topology = single;
            config.seed = 0xE81E5;
            config.replication = trial;
            config.max_generations = 10'000'000;
            const RunRecord record = run(config, problem);
            // is_euler_optimal throws if a full walk fails to close.
            closed[trial] = !record.hit_cap &&
                            is_euler_optimal(EdgePermutation{record.final_best_genotype}, graph);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker, w);
    }
    worker(0);
    for (auto& t : pool) {
        t.join();
    }
    for (std::uint32_t trial = 0; trial < kOptima; ++trial) {
        check.expect(closed[trial] == 1, "euler optimum trial " + std::to_string(trial));
    }
    check.detail << kOptima << " euler optima closed";
    return {"oracles", check.pass, check.detail.str(), 0.0};
}

// --------------------------------------------------------------- criterion 12

struct InvariantRun {
    std::string label;
    RunConfig config;
    const ProblemDefinition* problem;
    bool scalar;
};

void check_invariants(Check& check, const InvariantRun& setup, const RunRecord& record) {
    const auto& problem = *setup.problem;
    const std::uint32_t mu = setup.config.mu;
    const std::uint64_t tau = setup.config.tau;

    // Elitism: each island's fitness never worsens across variation and
    // migration, in the problem's own order (componentwise for vectors).
    std::vector<FitnessValue> previous = record.initial_fitness;
    for (const auto& trace : record.trajectory) {
        for (std::uint32_t i = 0; i < mu; ++i) {
            check.expect(problem.accept_offspring(previous[i], trace.post_variation[i]),
                         setup.label + ": elitism (variation)");
            check.expect(problem.accept_offspring(trace.post_variation[i], trace.post_migration[i]),
                         setup.label + ": elitism (migration)");
        }
        previous = trace.post_migration;
    }

    // Migration happens exactly at generations t with t mod tau == 0, t > 0.
    for (std::size_t t = 0; t < record.trajectory.size(); ++t) {
        const bool expected = tau != kNeverMigrate && t > 0 && t % tau == 0;
        check.expect(record.trajectory[t].migrated == expected, setup.label + ": migration timing");
    }

    // Takeover ordering and uniform best fitness hold for scalar problems;
    // the componentwise immigrant gate can reject incomparable vectors whose
    // sum key is better, so vector runs are exempt.
    if (!setup.scalar) {
        return;
    }
    for (const auto& trace : record.trajectory) {
        if (!trace.migrated) {
            continue;
        }
        for (std::uint32_t u = 0; u < mu; ++u) {
            for (std::uint32_t v : setup.config.topology.out_neighbors(u)) {
                check.expect(!problem.better_for_migration(trace.post_variation[u],
                                                           trace.post_migration[v]),
                             setup.label + ": takeover ordering");
            }
        }
        if (setup.config.topology.kind() == TopologyKind::complete && tau == 1) {
            const FitnessValue* best = &trace.post_variation[0];
            for (std::uint32_t i = 1; i < mu; ++i) {
                if (problem.better_for_migration(trace.post_variation[i], *best)) {
                    best = &trace.post_variation[i];
                }
            }
            for (std::uint32_t i = 0; i < mu; ++i) {
                check.expect(migration_equivalent(trace.post_migration[i], *best),
                             setup.label + ": uniform best after complete/tau=1 migration");
            }
        }
    }
}

CriterionResult criterion_engine_invariants(unsigned jobs) {
    Check check;

    std::vector<std::unique_ptr<ProblemDefinition>> problems;
    std::vector<InvariantRun> setups;
    std::uint64_t seed = 0xE191E;

    auto add = [&](std::string label, std::unique_ptr<ProblemDefinition> problem, bool scalar,
                   const Topology& topology, std::uint64_t tau) {
        problems.push_back(std::move(problem));
        for (std::uint64_t replication = 0; replication < 2; ++replication) {
            InvariantRun setup;
            setup.label = label;
            setup.problem = problems.back().get();
            setup.scalar = scalar;
            setup.config.mu = topology.mu();
            setup.config.tau = tau;
            setup.config.topology = topology;
            setup.config.seed = ++seed;
            setup.config.replication = replication;
            setup.config.max_generations = 100'000;
            setup.config.record_trajectory = true;
            setups.push_back(std::move(setup));
        }
    };

    const Topology ring4 = make_ring(4);
    const Topology complete4 = make_complete(4);
    const Topology torus4 = make_torus(2, 2);

    for (SortMeasure measure :
         {SortMeasure::ham, SortMeasure::exc, SortMeasure::inv, SortMeasure::las}) {
        const std::string name = std::string("sorting/") + to_string(measure);
        add(name + "/ring/tau1", std::make_unique<SortingProblem>(8, measure), true, ring4, 1);
        add(name + "/complete/tau1", std::make_unique<SortingProblem>(8, measure), true,
            complete4, 1);
        add(name + "/ring/tau3", std::make_unique<SortingProblem>(8, measure), true, ring4, 3);
        add(name + "/complete/tau3", std::make_unique<SortingProblem>(8, measure), true,
            complete4, 3);
    }
    add("sorting/ham/torus/tau1", std::make_unique<SortingProblem>(8, SortMeasure::ham), true,
        torus4, 1);
    for (SortMeasure measure :
         {SortMeasure::ham, SortMeasure::exc, SortMeasure::inv, SortMeasure::las}) {
        add(std::string("sorting/") + to_string(measure) + "/ring/never",
            std::make_unique<SortingProblem>(8, measure), true, ring4, kNeverMigrate);
    }

    const SsspInstance path8 = gen_path_graph(8, 1.0);
    const SsspInstance layered9 = gen_layered_instance(9, 2);
    for (SsspOperator op : {SsspOperator::vertex, SsspOperator::edge}) {
        const std::string name = std::string("sssp/") + to_string(op);
        add(name + "/ring/tau1", std::make_unique<SsspProblem>(path8.graph, op), false, ring4, 1);
        add(name + "/complete/tau1", std::make_unique<SsspProblem>(path8.graph, op), false,
            complete4, 1);
        add(name + "/ring/never", std::make_unique<SsspProblem>(path8.graph, op), false, ring4,
            kNeverMigrate);
    }
    add("sssp/vertex/layered/tau2", std::make_unique<SsspProblem>(layered9.graph,
                                                                  SsspOperator::vertex),
        false, complete4, 2);
    add("sssp/edge/layered/tau1", std::make_unique<SsspProblem>(layered9.graph,
                                                                SsspOperator::edge),
        false, complete4, 1);
    add("sssp/vertex/torus/tau1", std::make_unique<SsspProblem>(path8.graph,
                                                                SsspOperator::vertex),
        false, torus4, 1);
    add("sssp/edge/torus/tau1", std::make_unique<SsspProblem>(path8.graph, SsspOperator::edge),
        false, torus4, 1);

    for (std::uint32_t m : {6u, 8u}) {
        for (EulerOperator op :
             {EulerOperator::unrestricted, EulerOperator::symmetric, EulerOperator::asymmetric}) {
            const std::string name =
                "euler/m" + std::to_string(m) + "/" + std::string(to_string(op));
            add(name + "/ring/tau1",
                std::make_unique<EulerProblem>(make_double_cycle(m), op, MutationScheme::rls),
                true, ring4, 1);
            add(name + "/complete/tau1",
                std::make_unique<EulerProblem>(make_double_cycle(m), op, MutationScheme::rls),
                true, complete4, 1);
            add(name + "/ring/tau5",
                std::make_unique<EulerProblem>(make_double_cycle(m), op, MutationScheme::rls),
                true, ring4, 5);
        }
    }
    for (EulerOperator op :
         {EulerOperator::unrestricted, EulerOperator::symmetric, EulerOperator::asymmetric}) {
        add(std::string("euler/m6/") + to_string(op) + "/torus/tau1",
            std::make_unique<EulerProblem>(make_double_cycle(6), op, MutationScheme::rls), true,
            torus4, 1);
        add(std::string("euler/m8/") + to_string(op) + "/ea/complete/tau1",
            std::make_unique<EulerProblem>(make_double_cycle(8), op, MutationScheme::ea), true,
            complete4, 1);
    }

    const unsigned workers = std::max(1u, jobs);
    std::vector<std::string> failures(setups.size());
    auto worker = [&](unsigned offset) {
        for (std::size_t k = offset; k < setups.size(); k += workers) {
            Check local;
            const RunRecord record = run(setups[k].config, *setups[k].problem);
            check_invariants(local, setups[k], record);

            RunConfig threaded = setups[k].config;
            threaded.workers = 3;
            const RunRecord record3 = run(threaded, *setups[k].problem);
            local.expect(record == record3, setups[k].label + ": 1 vs 3 workers identical");
            if (!local.pass) {
                failures[k] = local.detail.str();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker, w);
    }
    worker(0);
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& failure : failures) {
        check.expect(failure.empty(), failure);
    }
    check.detail << setups.size() << " recorded runs across " << problems.size()
                 << " configurations, invariants and worker determinism held";
    return {"engine-invariants", check.pass, check.detail.str(), 0.0};
}

using CriterionFn = CriterionResult (*)(unsigned);

const std::vector<std::pair<std::string, CriterionFn>>& registry() {
    static const std::vector<std::pair<std::string, CriterionFn>> table = {
        {"rowe", criterion_rowe},
        {"bounds", criterion_bounds},
        {"decision", criterion_decision},
        {"decay", criterion_decay},
        {"regimes", criterion_regimes},
        {"operators", criterion_operators},
        {"sorting-speedup", criterion_sorting_speedup},
        {"sssp-operators", criterion_sssp_operators},
        {"rw-tails", criterion_rw_tails},
        {"inv-flat", criterion_inv_flat},
        {"oracles", criterion_oracles},
        {"engine-invariants", criterion_engine_invariants},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

CriterionResult run_criterion(const std::string& name, unsigned jobs) {
    for (const auto& [key, fn] : registry()) {
        if (key == name) {
            const auto start = std::chrono::steady_clock::now();
            CriterionResult result = fn(jobs == 0 ? std::thread::hardware_concurrency() : jobs);
            result.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        }
    }
    throw std::invalid_argument("unknown criterion selector: " + name);
}

std::vector<CriterionResult> run_criteria(const std::vector<std::string>& selectors,
                                          unsigned jobs) {
    std::vector<std::string> picked = selectors;
    if (picked.empty() || (picked.size() == 1 && picked[0] == "all")) {
        picked = criterion_names();
    }
    std::vector<CriterionResult> results;
    for (const auto& name : picked) {
        results.push_back(run_criterion(name, jobs));
    }
    return results;
}

}  // namespace isle
