#include "isle/eulerian.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace isle {

EulerGraph::EulerGraph(std::uint32_t n, std::vector<Edge> edges,
                       std::optional<std::uint32_t> shared_vertex)
    : n_(n), edges_(std::move(edges)), shared_vertex_(shared_vertex) {
    if (n < 2 || edges_.empty()) {
        throw std::invalid_argument("EulerGraph: need at least 2 vertices and 1 edge");
    }
    std::vector<std::uint32_t> degree(n, 0);
    for (const auto& e : edges_) {
        if (e.u >= n || e.v >= n) {
            throw std::invalid_argument("EulerGraph: edge endpoint out of range");
        }
        if (e.u == e.v) {
            throw std::invalid_argument("EulerGraph: loops are not allowed");
        }
        ++degree[e.u];
        ++degree[e.v];
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        if (degree[v] == 0) {
            throw std::invalid_argument("EulerGraph: isolated vertex");
        }
        if (degree[v] % 2 != 0) {
            throw std::invalid_argument("EulerGraph: all degrees must be even");
        }
    }
    // Connectivity over edges.
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("EulerGraph: graph must be connected");
    }
    if (shared_vertex_ && *shared_vertex_ >= n) {
        throw std::invalid_argument("EulerGraph: shared vertex out of range");
    }
}

EulerGraph load_euler_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open euler graph file: " + path.string());
    }
    std::string line;
    std::uint32_t n = 0;
    std::size_t m = 0;
    bool have_header = false;
    std::optional<std::uint32_t> shared;
    std::vector<EulerGraph::Edge> edges;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream row(line);
            std::string hash, key;
            std::uint32_t v = 0;
            if (row >> hash >> key >> v && key == "shared-vertex") {
                shared = v - 1;
            }
            continue;
        }
        std::istringstream row(line);
        if (!have_header) {
            if (!(row >> n >> m)) {
                throw std::runtime_error("euler graph file: bad header line");
            }
            have_header = true;
            continue;
        }
        std::uint32_t u = 0, v = 0;
        if (!(row >> u >> v)) {
            throw std::runtime_error("euler graph file: bad edge line: " + line);
        }
        if (u == 0 || v == 0 || u > n || v > n) {
            throw std::runtime_error("euler graph file: vertex out of range (1-indexed)");
        }
        edges.push_back({u - 1, v - 1, -1});
    }
    if (!have_header || edges.size() != m) {
        throw std::runtime_error("euler graph file: edge count does not match header");
    }
    return EulerGraph(n, std::move(edges), shared);
}

void save_euler_graph(const EulerGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write euler graph file: " + path.string());
    }
    if (g.shared_vertex()) {
        out << "# shared-vertex " << *g.shared_vertex() + 1 << "\n";
    }
    out << g.n() << " " << g.m() << "\n";
    for (const auto& e : g.edges()) {
        out << e.u + 1 << " " << e.v + 1 << "\n";
    }
}

EdgePermutation identity_edge_permutation(std::uint32_t m) {
    EdgePermutation p;
    p.order.resize(m);
    std::iota(p.order.begin(), p.order.end(), 0);
    return p;
}

bool is_valid_edge_permutation(const EdgePermutation& p, std::uint32_t m) {
    if (p.order.size() != m) {
        return false;
    }
    std::vector<bool> seen(m, false);
    for (std::int32_t id : p.order) {
        if (id < 0 || static_cast<std::uint32_t>(id) >= m || seen[id]) {
            return false;
        }
        seen[id] = true;
    }
    return true;
}

EdgePermutation random_edge_permutation(std::uint32_t m, Rng& rng) {
    EdgePermutation p = identity_edge_permutation(m);
    for (std::uint32_t i = m; i > 1; --i) {
        const std::uint64_t j = rng.below(i);
        std::swap(p.order[i - 1], p.order[j]);
    }
    return p;
}

std::vector<std::uint32_t> walk_vertices(const EdgePermutation& p, const EulerGraph& g) {
    const auto& first = g.edge(static_cast<std::uint32_t>(p.order[0]));
    if (p.size() >= 2) {
        const auto& second = g.edge(static_cast<std::uint32_t>(p.order[1]));
        auto contains = [](const EulerGraph::Edge& e, std::uint32_t x) {
            return e.u == x || e.v == x;
        };
        // The shared endpoint orients the first edge. A parallel second edge
        // contains both endpoints; stored order breaks that tie.
        std::uint32_t shared = UINT32_MAX;
        if (contains(second, first.v)) {
            shared = first.v;
        } else if (contains(second, first.u)) {
            shared = first.u;
        }
        if (shared != UINT32_MAX) {
            std::vector<std::uint32_t> chain;
            chain.push_back(shared == first.v ? first.u : first.v);
            chain.push_back(shared);
            std::uint32_t end = (second.u == shared) ? second.v : second.u;
            chain.push_back(end);
            for (std::size_t k = 2; k < p.size(); ++k) {
                const auto& e = g.edge(static_cast<std::uint32_t>(p.order[k]));
                if (e.u == end) {
                    end = e.v;
                } else if (e.v == end) {
                    end = e.u;
                } else {
                    break;
                }
                chain.push_back(end);
            }
            return chain;
        }
    }
    return {first.u, first.v};
}

WalkInfo walk_length(const EdgePermutation& p, const EulerGraph& g) {
    const auto chain = walk_vertices(p, g);
    WalkInfo info;
    info.length = static_cast<std::uint32_t>(chain.size() - 1);
    info.start_vertex = chain.front();
    info.end_vertex = chain.back();
    return info;
}

EdgePermutation jump_edges(const EdgePermutation& p, std::size_t i, std::size_t j) {
    if (i >= p.size() || j >= p.size()) {
        throw std::invalid_argument("jump_edges: position out of range");
    }
    if (i == j) {
        throw std::invalid_argument("jump_edges: positions must differ");
    }
    EdgePermutation q = p;
    auto begin = q.order.begin();
    if (i < j) {
        std::rotate(begin + i, begin + i + 1, begin + j + 1);
    } else {
        std::rotate(begin + j, begin + i, begin + i + 1);
    }
    return q;
}

EdgePermutation mutate_unrestricted(const EdgePermutation& p, Rng& rng) {
    const std::size_t m = p.size();
    if (m < 2) {
        throw std::invalid_argument("mutate_unrestricted: need at least 2 edges");
    }
    const std::size_t i = rng.below(m);
    std::size_t j = rng.below(m - 1);
    if (j >= i) {
        ++j;
    }
    return jump_edges(p, i, j);
}

EdgePermutation mutate_symmetric(const EdgePermutation& p, const EulerGraph& g, Rng& rng) {
    const std::size_t m = p.size();
    if (m < 2) {
        throw std::invalid_argument("mutate_symmetric: need at least 2 edges");
    }
    const std::uint32_t len = walk_length(p, g).length;
    if (len >= m) {
        throw std::invalid_argument("mutate_symmetric: walk already covers all edges");
    }
    const bool rear = rng.coin();
    for (;;) {
        const std::size_t i = rng.below(m);
        // Rear target: a source inside the walk lands at the walk's last
        // position len-1 (removing it shifts the prefix left); a source
        // behind the walk lands at slot len. Front target: position 0.
        std::size_t j;
        if (rear) {
            j = (i < len) ? len - 1 : len;
        } else {
            j = 0;
        }
        if (i == j) {
            continue;
        }
        return jump_edges(p, i, j);
    }
}

EdgePermutation mutate_asymmetric(const EdgePermutation& p, Rng& rng) {
    const std::size_t m = p.size();
    if (m < 2) {
        throw std::invalid_argument("mutate_asymmetric: need at least 2 edges");
    }
    const std::size_t i = 1 + rng.below(m - 1);
    return jump_edges(p, i, 0);
}

bool accept_walk_offspring(std::uint32_t current_len, std::uint32_t candidate_len) {
    return candidate_len >= current_len;
}

bool accept_walk_immigrant(std::uint32_t current_len, std::uint32_t candidate_len) {
    return candidate_len > current_len;
}

EulerGraph make_double_cycle(std::uint32_t m) {
    if (m % 2 != 0 || m / 2 < 3) {
        throw std::invalid_argument("make_double_cycle: m must be even with m/2 >= 3");
    }
    const std::uint32_t h = m / 2;
    std::vector<EulerGraph::Edge> edges;
    // First cycle over vertices 0..h-1 (vertex 0 is the junction).
    for (std::uint32_t k = 0; k < h; ++k) {
        edges.push_back({k, (k + 1) % h, 0});
    }
    // Second cycle over vertices 0, h..2h-2.
    edges.push_back({0, h, 1});
    for (std::uint32_t k = h; k < 2 * h - 2; ++k) {
        edges.push_back({k, k + 1, 1});
    }
    edges.push_back({2 * h - 2, 0, 1});
    return EulerGraph(2 * h - 1, std::move(edges), 0);
}

bool is_euler_optimal(const EdgePermutation& p, const EulerGraph& g) {
    const WalkInfo info = walk_length(p, g);
    if (info.length != g.m()) {
        return false;
    }
    if (info.start_vertex != info.end_vertex) {
        throw std::logic_error("is_euler_optimal: full walk on an Eulerian graph must close");
    }
    return true;
}

const char* to_string(EulerOperator op) {
    switch (op) {
        case EulerOperator::unrestricted: return "unrestricted";
        case EulerOperator::symmetric: return "symmetric";
        case EulerOperator::asymmetric: return "asymmetric";
    }
    return "?";
}

EulerOperator euler_operator_from_string(const std::string& name) {
    if (name == "unrestricted") return EulerOperator::unrestricted;
    if (name == "symmetric") return EulerOperator::symmetric;
    if (name == "asymmetric") return EulerOperator::asymmetric;
    throw std::invalid_argument("unknown euler operator: " + name);
}

EulerProblem::EulerProblem(EulerGraph graph, EulerOperator op, MutationScheme scheme)
    : graph_(std::move(graph)), op_(op), scheme_(scheme) {
    if (graph_.m() < 2) {
        throw std::invalid_argument("EulerProblem: need at least 2 edges");
    }
}

Genotype EulerProblem::sample_initial(Rng& rng) const {
    return random_edge_permutation(graph_.m(), rng).order;
}

Genotype EulerProblem::mutate(const Genotype& g, Rng& rng) const {
    EdgePermutation p{g};
    // A resident covering all edges is already optimal; the run ends this
    // generation, so leave it untouched instead of mutating a full walk.
    if (op_ == EulerOperator::symmetric && walk_length(p, graph_).length == graph_.m()) {
        return g;
    }
    const unsigned ops = scheme_ == MutationScheme::rls ? 1 : poisson1_sample(rng) + 1;
    for (unsigned k = 0; k < ops; ++k) {
        switch (op_) {
            case EulerOperator::unrestricted: p = mutate_unrestricted(p, rng); break;
            case EulerOperator::symmetric:
                if (walk_length(p, graph_).length == graph_.m()) {
                    return p.order;  // an intermediate jump completed the walk
                }
                p = mutate_symmetric(p, graph_, rng);
                break;
            case EulerOperator::asymmetric: p = mutate_asymmetric(p, rng); break;
        }
    }
    return p.order;
}

FitnessValue EulerProblem::fitness(const Genotype& g) const {
    return FitnessValue::maximize(walk_length(EdgePermutation{g}, graph_).length);
}

bool EulerProblem::is_optimal_value(const FitnessValue& f) const {
    return f.scalar == static_cast<double>(graph_.m());
}

namespace {

// State machine described in the header; one slot per island.
class DecisionObserver final : public RunObserver {
public:
    DecisionObserver(const EulerGraph& graph, std::uint32_t mu, bool stop_when_all_decided)
        : graph_(&graph), stop_(stop_when_all_decided), seen_len2_(mu, false),
          decided_(mu, false) {
        if (!graph.shared_vertex()) {
            throw std::invalid_argument("decision observer needs a marked shared vertex");
        }
        shared_ = *graph.shared_vertex();
    }

    void observe(std::uint64_t generations_done, std::uint32_t island, const Genotype& genotype,
                 const FitnessValue& fitness, std::vector<ProbeEvent>& events) override {
        (void)fitness;
        if (decided_[island]) {
            return;
        }
        const EdgePermutation p{genotype};
        const auto chain = walk_vertices(p, *graph_);
        if (chain.size() < 3) {  // walk of length 1: no interior vertices
            return;
        }
        const bool first_len2 = !seen_len2_[island];
        seen_len2_[island] = true;
        for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
            if (chain[k] != shared_) {
                continue;
            }
            const auto tag_in = graph_->edge(static_cast<std::uint32_t>(p.order[k - 1])).cycle_tag;
            const auto tag_out = graph_->edge(static_cast<std::uint32_t>(p.order[k])).cycle_tag;
            const bool crossed = tag_in != tag_out;
            const char* tag = crossed ? kDecisionOppositeCycle : kDecisionSameCycle;
            if (first_len2 && crossed) {
                tag = kDecisionNotApplicable;
            }
            decided_[island] = true;
            events.push_back({generations_done, island, tag, ""});
            return;
        }
    }

    bool finished() const override {
        return stop_ && std::all_of(decided_.begin(), decided_.end(), [](bool b) { return b; });
    }

private:
    const EulerGraph* graph_;
    bool stop_;
    std::uint32_t shared_ = 0;
    std::vector<bool> seen_len2_;
    std::vector<bool> decided_;
};

}  // namespace

std::unique_ptr<RunObserver> make_decision_observer(const EulerGraph& graph, std::uint32_t mu,
                                                    bool stop_when_all_decided) {
    return std::make_unique<DecisionObserver>(graph, mu, stop_when_all_decided);
}

}  // namespace isle
