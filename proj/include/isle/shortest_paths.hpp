#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "isle/engine.hpp"

namespace isle {

// Undirected connected weighted graph with vertices 0..n-1 and the search
// source fixed at vertex n-1. Non-edges are simply absent. Immutable after
// construction.
class WeightedGraph {
public:
    struct Edge {
        std::uint32_t u, v;
        double weight;
    };

    WeightedGraph(std::uint32_t n, std::vector<Edge> edges);

    std::uint32_t n() const { return n_; }
    std::uint32_t source() const { return n_ - 1; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    // Sorted (neighbor, weight) rows per vertex.
    const std::vector<std::pair<std::uint32_t, double>>& neighbors(std::uint32_t v) const;

    // Weight of {u, v}, or +inf if the edge does not exist.
    double weight(std::uint32_t u, std::uint32_t v) const;

private:
    std::uint32_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency_;
};

// File format: line `n m`, then m lines `u v weight` (1-indexed, source = n).
WeightedGraph load_weighted_graph(const std::filesystem::path& path);
void save_weighted_graph(const WeightedGraph& g, const std::filesystem::path& path);

// A candidate solution: pred[i] is the predecessor of vertex i for
// i = 0..n-2 (the source has none); pred[i] != i.
using PredecessorVector = Genotype;

// Path lengths from the source induced by a predecessor vector; +inf for
// components whose chain never reaches the source.
struct DistanceVector {
    std::vector<double> values;

    bool operator==(const DistanceVector&) const = default;
};

// Layer structure of an instance: depth is the maximum edge count of any
// shortest path; layer_sizes[j-1] counts the vertices whose deepest shortest
// path has exactly j edges.
struct LayerProfile {
    std::uint32_t depth = 0;
    std::vector<std::uint32_t> layer_sizes;
};

bool is_valid_predecessor_vector(const PredecessorVector& x, std::uint32_t n);

// Follows every predecessor chain; a chain that revisits a vertex or uses a
// missing edge yields +inf for everything routed through it.
DistanceVector eval_distances(const PredecessorVector& x, const WeightedGraph& g);

// a[i] <= b[i] for all i (inf <= inf holds). Lengths must match.
bool dominates_weakly(const DistanceVector& a, const DistanceVector& b);

// Candidate survives iff it weakly dominates the current vector.
bool accept_sssp(const DistanceVector& current, const DistanceVector& candidate);

// One elementary vertex mutation: pick a non-source vertex uniformly, replace
// its predecessor by a uniform choice over the n-2 other vertices.
PredecessorVector elementary_vertex_mutation(const PredecessorVector& x, std::uint32_t n,
                                             Rng& rng);

// One elementary edge mutation: pick one of the 2m edge orientations
// uniformly; orientation (u, v) with v != source sets pred[v] = u.
// Orientations into the source are redrawn.
PredecessorVector elementary_edge_mutation(const PredecessorVector& x, const WeightedGraph& g,
                                           Rng& rng);

// Full mutations: S ~ Poisson(1), then S + 1 elementary mutations.
PredecessorVector mutate_vertex_based(const PredecessorVector& x, std::uint32_t n, Rng& rng);
PredecessorVector mutate_edge_based(const PredecessorVector& x, const WeightedGraph& g, Rng& rng);

// Exact distances from the source via a label-setting (heap) algorithm.
DistanceVector shortest_path_oracle(const WeightedGraph& g);

// True iff the induced distances equal the oracle distances componentwise.
bool is_optimal_sssp(const PredecessorVector& x, const WeightedGraph& g);

struct SsspInstance {
    WeightedGraph graph;
    LayerProfile profile;
};

// Path graph 0-1-2-...-(n-1) with the source at the far end; depth n-1 with
// one vertex per layer.
SsspInstance gen_path_graph(std::uint32_t n, double weight);

// ell layers of (n-1)/ell vertices; every layer-j vertex connects to all
// layer-(j-1) vertices with unit weights (layer 0 is the source), so the
// deepest shortest path of a layer-j vertex has exactly j edges.
// ell must divide n-1.
SsspInstance gen_layered_instance(std::uint32_t n, std::uint32_t ell);

enum class SsspOperator { vertex, edge };

const char* to_string(SsspOperator op);
SsspOperator sssp_operator_from_string(const std::string& name);

// Multi-objective SSSP as an engine problem: vector fitness under
// componentwise dominance acceptance. Vertex-based runs start from uniform
// predecessors; edge-based runs start from uniform graph neighbors, matching
// the closure property of the operator.
class SsspProblem final : public ProblemDefinition {
public:
    SsspProblem(WeightedGraph graph, SsspOperator op);

    Genotype sample_initial(Rng& rng) const override;
    Genotype mutate(const Genotype& g, Rng& rng) const override;
    FitnessValue fitness(const Genotype& g) const override;
    bool is_optimal_value(const FitnessValue& f) const override;

    const WeightedGraph& graph() const { return graph_; }

private:
    WeightedGraph graph_;
    SsspOperator op_;
    DistanceVector oracle_;
};

}  // namespace isle
