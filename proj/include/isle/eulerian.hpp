#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isle/engine.hpp"

namespace isle {

// Undirected loopless Eulerian graph: every degree even, connected.
// Multi-edges are permitted (edge identifiers stay distinct). Edges may carry
// a cycle tag (used by the two-cycle instance below); -1 means untagged.
class EulerGraph {
public:
    struct Edge {
        std::uint32_t u, v;
        std::int8_t cycle_tag = -1;
    };

    EulerGraph(std::uint32_t n, std::vector<Edge> edges,
               std::optional<std::uint32_t> shared_vertex = std::nullopt);

    std::uint32_t n() const { return n_; }
    std::uint32_t m() const { return static_cast<std::uint32_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::uint32_t id) const { return edges_.at(id); }
    std::optional<std::uint32_t> shared_vertex() const { return shared_vertex_; }

private:
    std::uint32_t n_;
    std::vector<Edge> edges_;
    std::optional<std::uint32_t> shared_vertex_;
};

// File format: `n m`, then m lines `u v` (1-indexed). A `# shared-vertex k`
// comment line marks the two-cycle instance's junction vertex.
EulerGraph load_euler_graph(const std::filesystem::path& path);
void save_euler_graph(const EulerGraph& g, const std::filesystem::path& path);

// A walk candidate: permutation of the edge identifiers 0..m-1.
struct EdgePermutation {
    Genotype order;

    std::size_t size() const { return order.size(); }
    bool operator==(const EdgePermutation&) const = default;
};

EdgePermutation identity_edge_permutation(std::uint32_t m);
bool is_valid_edge_permutation(const EdgePermutation& p, std::uint32_t m);
EdgePermutation random_edge_permutation(std::uint32_t m, Rng& rng);

struct WalkInfo {
    std::uint32_t length = 0;  // 1..m
    std::uint32_t start_vertex = 0;
    std::uint32_t end_vertex = 0;
};

// Vertex chain v0..vl of the maximal traversable prefix: the first edge fixes
// a tentative traversal, the second edge orients it through their shared
// endpoint, and every further edge must continue from the running end vertex.
// For a length-1 walk the chain is the first edge's endpoints in stored order.
std::vector<std::uint32_t> walk_vertices(const EdgePermutation& p, const EulerGraph& g);

// Length, start and end of the maximal traversable prefix (chain semantics).
WalkInfo walk_length(const EdgePermutation& p, const EulerGraph& g);

// Edge at position i moved so it ends up at position j, intermediates
// shifted. 0-based, i != j.
EdgePermutation jump_edges(const EdgePermutation& p, std::size_t i, std::size_t j);

// One jump with (i, j) uniform over ordered pairs, i != j.
EdgePermutation mutate_unrestricted(const EdgePermutation& p, Rng& rng);

// One jump whose destination is restricted to the walk's two growth points:
// the front of the walk or the slot after its end. A source drawn inside the
// walk that targets the rear lands at the walk's last position (removal
// shifts the prefix left), which keeps rotations of a closed cycle possible
// in both directions. Draws that would be a no-op are redrawn.
// Requires walk length < m.
EdgePermutation mutate_symmetric(const EdgePermutation& p, const EulerGraph& g, Rng& rng);

// One jump with the destination fixed to the front: all edges are prepended,
// so rotations of a closed cycle only go one way.
EdgePermutation mutate_asymmetric(const EdgePermutation& p, Rng& rng);

// Walk-length acceptance: offspring survives a tie (plateau moves are
// allowed), immigrants must be strictly longer.
bool accept_walk_offspring(std::uint32_t current_len, std::uint32_t candidate_len);
bool accept_walk_immigrant(std::uint32_t current_len, std::uint32_t candidate_len);

// Two cycles of m/2 edges each sharing exactly one vertex (vertex 0). Edge
// ids 0..m/2-1 form the first cycle (tag 0), the rest the second (tag 1).
// m must be even with m/2 >= 3.
EulerGraph make_double_cycle(std::uint32_t m);

// True iff the walk covers all m edges. A full walk on an Eulerian graph must
// close; a contradiction indicates a corrupted permutation and throws.
bool is_euler_optimal(const EdgePermutation& p, const EulerGraph& g);

enum class EulerOperator { unrestricted, symmetric, asymmetric };

const char* to_string(EulerOperator op);
EulerOperator euler_operator_from_string(const std::string& name);

// Eulerian cycle search as an engine problem; fitness is the walk length.
// RLS applies one jump per generation, the EA scheme S+1 jumps.
class EulerProblem final : public ProblemDefinition {
public:
    EulerProblem(EulerGraph graph, EulerOperator op,
                 MutationScheme scheme = MutationScheme::rls);

    Genotype sample_initial(Rng& rng) const override;
    Genotype mutate(const Genotype& g, Rng& rng) const override;
    FitnessValue fitness(const Genotype& g) const override;
    bool is_optimal_value(const FitnessValue& f) const override;

    const EulerGraph& graph() const { return graph_; }

private:
    EulerGraph graph_;
    EulerOperator op_;
    MutationScheme scheme_;
};

// Per-island decision probe for runs on the two-cycle instance. Fires the
// first time the accepted walk moves past the shared vertex (it becomes an
// interior vertex of the walk) and records:
//   opposite_cycle - the walk crossed into the other cycle (no rotation ahead)
//   same_cycle     - the walk continued within its own cycle
//   not_applicable - the first walk of length >= 2 already straddled both
//                    cycles, so no decision was ever made
// Tags are emitted as probe events; the observer can stop the run once every
// island has decided.
inline constexpr const char* kDecisionOppositeCycle = "opposite_cycle";
inline constexpr const char* kDecisionSameCycle = "same_cycle";
inline constexpr const char* kDecisionNotApplicable = "not_applicable";

std::unique_ptr<RunObserver> make_decision_observer(const EulerGraph& graph, std::uint32_t mu,
                                                    bool stop_when_all_decided);

}  // namespace isle
